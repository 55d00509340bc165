#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace metivier::twisted {

using cplx = std::complex<double>;

// Uniform grid over R^{2n}: per-axis points x_i = -L + i h, h = 2L/N,
// i = 0..N-1. Fields are Schwartz-class surrogates, zero-extended outside.
struct GridSpec {
  int half_dim = 1;         // n
  double half_width = 8.0;  // L
  int points_per_axis = 128;

  double spacing() const { return 2.0 * half_width / points_per_axis; }
  double coord(int i) const { return -half_width + i * spacing(); }
  int axis_count() const { return 2 * half_dim; }
  std::size_t point_count() const;
  double cell_volume() const;  // h^{2n}
  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

struct SampledField {
  GridSpec grid;
  std::vector<cplx> values;  // row-major over the 2n axes

  void validate() const;  // size and finiteness
};

SampledField zero_field(const GridSpec& grid);

double l2_norm(const SampledField& f);
double lp_norm(const SampledField& f, double p);  // p = inf handled as max
// <f, g> = sum conj(f) g h^{2n}
cplx inner_product(const SampledField& f, const SampledField& g);
double l2_distance(const SampledField& f, const SampledField& g);
SampledField& axpy(SampledField& y, cplx a, const SampledField& x);  // y += a x
SampledField scaled(const SampledField& f, cplx a);

// Field over a (v, z) product grid: v in R^2 (n = 1), z in R. Values are
// indexed values[iv * z_points + iz] with iv the flattened v-grid index.
struct VZField {
  GridSpec vgrid;  // half_dim must be 1
  int z_points = 64;
  double z_half_width = 16.0;
  std::vector<cplx> values;

  double z_spacing() const { return 2.0 * z_half_width / z_points; }
  double z_coord(int m) const { return -z_half_width + m * z_spacing(); }
  void validate() const;
};

VZField zero_vzfield(const GridSpec& vgrid, int z_points, double z_half_width);
double l2_norm(const VZField& f);
double l2_distance(const VZField& f, const VZField& g);

// Flat binary serialisation: little-endian f64 (re, im) pairs, row-major
// over axes, plus a key-value sidecar descriptor. Writes prefix + ".bin"
// and prefix + ".desc".
void save_field(const SampledField& f, const std::string& path_prefix);
SampledField load_field(const std::string& path_prefix);

}  // namespace metivier::twisted
