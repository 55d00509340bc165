#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace metivier::cli {

// Flat key-value experiment configuration: one `key = value` assignment per
// line, '#' comments. No nesting.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_text(const std::string& text);

  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

// Locale-independent numeric formatting for CSV cells ('.' decimal point).
std::string format_double(double x, int significant_digits = 12);

}  // namespace metivier::cli
