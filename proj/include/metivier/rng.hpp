#pragma once

#include <cstdint>

namespace metivier {

// Counter-based generator: draw i depends only on (seed, i), so sweeps can
// be reordered or parallelised without changing the stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const;
  // uniform in [0, 1)
  double uniform(std::uint64_t counter) const;
  double uniform(std::uint64_t counter, double lo, double hi) const;
  // standard normal (two independent uniforms folded through Box-Muller)
  double normal(std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

}  // namespace metivier
