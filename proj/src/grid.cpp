#include "metivier/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace metivier::twisted {

std::size_t GridSpec::point_count() const {
  std::size_t total = 1;
  for (int a = 0; a < axis_count(); ++a) total *= static_cast<std::size_t>(points_per_axis);
  return total;
}

double GridSpec::cell_volume() const {
  double v = 1;
  for (int a = 0; a < axis_count(); ++a) v *= spacing();
  return v;
}

void GridSpec::validate() const {
  if (half_dim < 1) throw std::invalid_argument("GridSpec: half_dim must be >= 1");
  if (!(half_width > 0)) throw std::invalid_argument("GridSpec: half_width must be > 0");
  if (points_per_axis < 8 || points_per_axis % 2 != 0)
    throw std::invalid_argument("GridSpec: points_per_axis must be even and >= 8");
}

void SampledField::validate() const {
  grid.validate();
  if (values.size() != grid.point_count())
    throw std::invalid_argument("SampledField: value count does not match grid");
  for (const cplx& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("SampledField: non-finite entry");
}

SampledField zero_field(const GridSpec& grid) {
  grid.validate();
  return SampledField{grid, std::vector<cplx>(grid.point_count(), cplx{0, 0})};
}

double l2_norm(const SampledField& f) {
  double s = 0;
  for (const cplx& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.grid.cell_volume());
}

double lp_norm(const SampledField& f, double p) {
  if (std::isinf(p)) {
    double m = 0;
    for (const cplx& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1)) throw std::domain_error("lp_norm: p must be >= 1 or inf");
  double s = 0;
  for (const cplx& v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

cplx inner_product(const SampledField& f, const SampledField& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("inner_product: grid mismatch");
  cplx s{0, 0};
  for (std::size_t i = 0; i < f.values.size(); ++i)
    s += std::conj(f.values[i]) * g.values[i];
  return s * f.grid.cell_volume();
}

double l2_distance(const SampledField& f, const SampledField& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("l2_distance: grid mismatch");
  double s = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    s += std::norm(f.values[i] - g.values[i]);
  return std::sqrt(s * f.grid.cell_volume());
}

SampledField& axpy(SampledField& y, cplx a, const SampledField& x) {
  if (!(y.grid == x.grid)) throw std::invalid_argument("axpy: grid mismatch");
  for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
  return y;
}

SampledField scaled(const SampledField& f, cplx a) {
  SampledField out = f;
  for (cplx& v : out.values) v *= a;
  return out;
}

void VZField::validate() const {
  vgrid.validate();
  if (vgrid.half_dim != 1)
    throw std::invalid_argument("VZField: v-grid must have half_dim 1");
  if (z_points < 8) throw std::invalid_argument("VZField: z_points must be >= 8");
  if (!(z_half_width > 0)) throw std::invalid_argument("VZField: z_half_width must be > 0");
  if (values.size() != vgrid.point_count() * static_cast<std::size_t>(z_points))
    throw std::invalid_argument("VZField: value count does not match grids");
}

VZField zero_vzfield(const GridSpec& vgrid, int z_points, double z_half_width) {
  VZField f{vgrid, z_points, z_half_width, {}};
  f.values.assign(vgrid.point_count() * static_cast<std::size_t>(z_points), cplx{0, 0});
  f.validate();
  return f;
}

double l2_norm(const VZField& f) {
  double s = 0;
  for (const cplx& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.vgrid.cell_volume() * f.z_spacing());
}

double l2_distance(const VZField& f, const VZField& g) {
  if (!(f.vgrid == g.vgrid) || f.z_points != g.z_points ||
      f.z_half_width != g.z_half_width)
    throw std::invalid_argument("l2_distance: vz grids differ");
  double s = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    s += std::norm(f.values[i] - g.values[i]);
  return std::sqrt(s * f.vgrid.cell_volume() * f.z_spacing());
}

namespace {

std::uint64_t to_le_bits(double x) {
  std::uint64_t u = std::bit_cast<std::uint64_t>(x);
  if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
  return u;
}

double from_le_bits(std::uint64_t u) {
  if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
  return std::bit_cast<double>(u);
}

}  // namespace

void save_field(const SampledField& f, const std::string& path_prefix) {
  f.validate();
  {
    std::ofstream desc(path_prefix + ".desc");
    if (!desc) throw std::runtime_error("save_field: cannot open descriptor file");
    desc << "format = metivier-field-v1\n";
    desc << "half_dim = " << f.grid.half_dim << "\n";
    desc << "half_width = " << std::hexfloat << f.grid.half_width << std::defaultfloat
         << "\n";
    desc << "points_per_axis = " << f.grid.points_per_axis << "\n";
    desc << "value_count = " << f.values.size() << "\n";
    desc << "byte_order = little_endian\n";
  }
  std::ofstream bin(path_prefix + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("save_field: cannot open binary file");
  for (const cplx& v : f.values) {
    std::uint64_t re = to_le_bits(v.real()), im = to_le_bits(v.imag());
    bin.write(reinterpret_cast<const char*>(&re), 8);
    bin.write(reinterpret_cast<const char*>(&im), 8);
  }
}

SampledField load_field(const std::string& path_prefix) {
  std::ifstream desc(path_prefix + ".desc");
  if (!desc) throw std::runtime_error("load_field: missing descriptor " + path_prefix);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(desc, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (kv["format"] != "metivier-field-v1")
    throw std::runtime_error("load_field: unknown format");
  SampledField f;
  f.grid.half_dim = std::stoi(kv.at("half_dim"));
  f.grid.half_width = std::strtod(kv.at("half_width").c_str(), nullptr);
  f.grid.points_per_axis = std::stoi(kv.at("points_per_axis"));
  const std::size_t count = std::stoull(kv.at("value_count"));
  if (count != f.grid.point_count())
    throw std::runtime_error("load_field: value_count inconsistent with grid");
  std::ifstream bin(path_prefix + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("load_field: missing binary " + path_prefix);
  f.values.resize(count);
  for (cplx& v : f.values) {
    std::uint64_t re = 0, im = 0;
    bin.read(reinterpret_cast<char*>(&re), 8);
    bin.read(reinterpret_cast<char*>(&im), 8);
    if (!bin) throw std::runtime_error("load_field: truncated binary file");
    v = cplx{from_le_bits(re), from_le_bits(im)};
  }
  f.validate();
  return f;
}

}  // namespace metivier::twisted
