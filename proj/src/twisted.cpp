#include "metivier/twisted.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "metivier/parallel.hpp"
#include "metivier/specfun.hpp"

namespace metivier::twisted {

SampledField sample_special_hermite(const GridSpec& grid, int degree, double lambda) {
  grid.validate();
  if (grid.half_dim != 1)
    throw std::invalid_argument("sample_special_hermite: gridded fields are n = 1 only");
  const int n_pts = grid.points_per_axis;
  SampledField out = zero_field(grid);
  specfun::HermiteProfile profile{degree, grid.half_dim, lambda};
  for (int i1 = 0; i1 < n_pts; ++i1) {
    const double x1 = grid.coord(i1);
    for (int i2 = 0; i2 < n_pts; ++i2) {
      const double x2 = grid.coord(i2);
      out.values[static_cast<std::size_t>(i1) * n_pts + i2] =
          specfun::special_hermite_radial(profile, x1 * x1 + x2 * x2);
    }
  }
  return out;
}

SampledField twisted_convolve(const SampledField& f, const SampledField& g,
                              double lambda) {
  if (!(f.grid == g.grid))
    throw std::invalid_argument("twisted_convolve: fields on different grids");
  f.grid.validate();
  if (f.grid.half_dim != 1)
    throw std::invalid_argument("twisted_convolve: gridded path is n = 1 only");

  const int N = f.grid.points_per_axis;
  const int half = N / 2;
  const double weight = f.grid.cell_volume();

  // phase(z, w) = e^{i lambda (x_{i1} x_{j2} - x_{i2} x_{j1}) / 2}
  //             = T[i1][j2] * conj(T[i2][j1]),  T[a][b] = e^{i lambda x_a x_b / 2};
  // this is the twist matching the spectrum of L^lambda (rotation term
  // +i lambda (y1 d2 - y2 d1)).
  std::vector<cplx> T(static_cast<std::size_t>(N) * N);
  for (int a = 0; a < N; ++a) {
    const double xa = f.grid.coord(a);
    for (int b = 0; b < N; ++b) {
      const double arg = 0.5 * lambda * xa * f.grid.coord(b);
      T[static_cast<std::size_t>(a) * N + b] = cplx{std::cos(arg), std::sin(arg)};
    }
  }

  SampledField out = zero_field(f.grid);
  parallel_for(0, static_cast<std::size_t>(N), [&](std::size_t i1u) {
    const int i1 = static_cast<int>(i1u);
    const cplx* trow_i1 = &T[static_cast<std::size_t>(i1) * N];
    for (int i2 = 0; i2 < N; ++i2) {
      const cplx* trow_i2 = &T[static_cast<std::size_t>(i2) * N];
      // source window with f zero-extended: 0 <= i - j + N/2 <= N-1
      const int j1_lo = std::max(0, i1 - half + 1), j1_hi = std::min(N - 1, i1 + half);
      const int j2_lo = std::max(0, i2 - half + 1), j2_hi = std::min(N - 1, i2 + half);
      double acc_re = 0, acc_im = 0;
      for (int j1 = j1_lo; j1 <= j1_hi; ++j1) {
        const int m1 = i1 - j1 + half;
        const cplx* frow = &f.values[static_cast<std::size_t>(m1) * N];
        const cplx* grow = &g.values[static_cast<std::size_t>(j1) * N];
        double in_re = 0, in_im = 0;
        for (int j2 = j2_lo; j2 <= j2_hi; ++j2) {
          const cplx fv = frow[i2 - j2 + half];
          const cplx gv = grow[j2];
          const cplx ph = trow_i1[j2];
          // f * g
          const double ar = fv.real() * gv.real() - fv.imag() * gv.imag();
          const double ai = fv.real() * gv.imag() + fv.imag() * gv.real();
          // * ph
          in_re += ar * ph.real() - ai * ph.imag();
          in_im += ai * ph.real() + ar * ph.imag();
        }
        // * conj(T[i2][j1])
        const cplx c1 = trow_i2[j1];
        acc_re += in_re * c1.real() + in_im * c1.imag();
        acc_im += in_im * c1.real() - in_re * c1.imag();
      }
      out.values[static_cast<std::size_t>(i1) * N + i2] =
          cplx{acc_re * weight, acc_im * weight};
    }
  });
  return out;
}

SampledField project(const SampledField& f, int degree, double lambda) {
  if (lambda == 0.0)
    throw std::domain_error("project: lambda = 0 degenerates the twisted structure");
  if (degree < 0) throw std::domain_error("project: degree must be >= 0");
  f.grid.validate();
  if (f.grid.half_dim != 1)
    throw std::invalid_argument("project: gridded path is n = 1 only");

  // Kernel form: (Lambda_k^lambda f)(z) =
  //   h^2 sum_w phi_k^{|lambda|}(z - w) e^{i lambda Im(z conj(w))/2} f(w),
  // with phi evaluated analytically on the offset lattice. The discrete
  // kernel is exactly Hermitian.
  const int N = f.grid.points_per_axis;
  const double h = f.grid.spacing();
  const double weight = f.grid.cell_volume();
  specfun::HermiteProfile profile{degree, 1, std::abs(lambda)};

  std::vector<double> radial(static_cast<std::size_t>(N) * N);
  for (int d1 = 0; d1 < N; ++d1)
    for (int d2 = 0; d2 < N; ++d2)
      radial[static_cast<std::size_t>(d1) * N + d2] = specfun::special_hermite_radial(
          profile, h * h * (static_cast<double>(d1) * d1 + static_cast<double>(d2) * d2));

  // phase(z, w) = e^{i lambda (x_{i2} x_{j1} - x_{i1} x_{j2}) / 2}
  //             = T[i2][j1] conj(T[i1][j2])
  std::vector<cplx> T(static_cast<std::size_t>(N) * N);
  for (int a = 0; a < N; ++a) {
    const double xa = f.grid.coord(a);
    for (int b = 0; b < N; ++b) {
      const double arg = 0.5 * lambda * xa * f.grid.coord(b);
      T[static_cast<std::size_t>(a) * N + b] = cplx{std::cos(arg), std::sin(arg)};
    }
  }

  SampledField out = zero_field(f.grid);
  parallel_for(0, static_cast<std::size_t>(N), [&](std::size_t i1u) {
    const int i1 = static_cast<int>(i1u);
    const cplx* trow_i1 = &T[static_cast<std::size_t>(i1) * N];
    for (int i2 = 0; i2 < N; ++i2) {
      const cplx* trow_i2 = &T[static_cast<std::size_t>(i2) * N];
      double acc_re = 0, acc_im = 0;
      for (int j1 = 0; j1 < N; ++j1) {
        const double* prow = &radial[static_cast<std::size_t>(std::abs(i1 - j1)) * N];
        const cplx* frow = &f.values[static_cast<std::size_t>(j1) * N];
        double in_re = 0, in_im = 0;
        for (int j2 = 0; j2 < N; ++j2) {
          const double rad = prow[std::abs(i2 - j2)];
          const cplx fv = frow[j2];
          const cplx ph = trow_i1[j2];
          // f * conj(ph) * rad
          in_re += rad * (fv.real() * ph.real() + fv.imag() * ph.imag());
          in_im += rad * (fv.imag() * ph.real() - fv.real() * ph.imag());
        }
        // * T[i2][j1]
        const cplx c1 = trow_i2[j1];
        acc_re += in_re * c1.real() - in_im * c1.imag();
        acc_im += in_re * c1.imag() + in_im * c1.real();
      }
      out.values[static_cast<std::size_t>(i1) * N + i2] =
          cplx{acc_re * weight, acc_im * weight};
    }
  });
  return out;
}

LaplacianResult twisted_laplacian(const SampledField& f, double lambda) {
  f.grid.validate();
  if (f.grid.half_dim != 1)
    throw std::invalid_argument("twisted_laplacian: gridded path is n = 1 only");
  const int N = f.grid.points_per_axis;
  const double h = f.grid.spacing();

  double fmax = 0, bmax = 0;
  for (int i1 = 0; i1 < N; ++i1)
    for (int i2 = 0; i2 < N; ++i2) {
      const double a = std::abs(f.values[static_cast<std::size_t>(i1) * N + i2]);
      fmax = std::max(fmax, a);
      if (i1 == 0 || i1 == N - 1 || i2 == 0 || i2 == N - 1) bmax = std::max(bmax, a);
    }

  LaplacianResult res;
  res.boundary_ratio = fmax > 0 ? bmax / fmax : 0.0;
  res.boundary_decay_ok = res.boundary_ratio <= 1e-8;
  res.field = zero_field(f.grid);

  auto at = [&](int i1, int i2) -> cplx {
    if (i1 < 0 || i1 >= N || i2 < 0 || i2 >= N) return cplx{0, 0};
    return f.values[static_cast<std::size_t>(i1) * N + i2];
  };
  const double inv_h2 = 1.0 / (h * h);
  const double inv_2h = 1.0 / (2.0 * h);
  parallel_for(0, static_cast<std::size_t>(N), [&](std::size_t i1u) {
    const int i1 = static_cast<int>(i1u);
    const double y1 = f.grid.coord(i1);
    for (int i2 = 0; i2 < N; ++i2) {
      const double y2 = f.grid.coord(i2);
      const cplx c = at(i1, i2);
      const cplx d11 = (at(i1 + 1, i2) - 2.0 * c + at(i1 - 1, i2)) * inv_h2;
      const cplx d22 = (at(i1, i2 + 1) - 2.0 * c + at(i1, i2 - 1)) * inv_h2;
      const cplx d1 = (at(i1 + 1, i2) - at(i1 - 1, i2)) * inv_2h;
      const cplx d2 = (at(i1, i2 + 1) - at(i1, i2 - 1)) * inv_2h;
      const cplx rot = cplx{0, lambda} * (y1 * d2 - y2 * d1);
      res.field.values[static_cast<std::size_t>(i1) * N + i2] =
          -(d11 + d22) + 0.25 * lambda * lambda * (y1 * y1 + y2 * y2) * c + rot;
    }
  });
  return res;
}

SampledField dilate(const SampledField& f, double scale) {
  if (!(scale > 0)) throw std::domain_error("dilate: scale must be > 0");
  SampledField out = f;
  out.grid.half_width = f.grid.half_width / scale;
  return out;
}

double dilation_residual(const SampledField& g, int degree, double lambda) {
  if (!(lambda > 0)) throw std::domain_error("dilation_residual: lambda must be > 0");
  const double s = std::sqrt(lambda);
  const double n = g.grid.half_dim;
  SampledField lhs = project(g, degree, lambda);
  SampledField inner = project(dilate(g, 1.0 / s), degree, 1.0);
  SampledField rhs = scaled(dilate(inner, s), std::pow(lambda, -n));
  const double ref = l2_norm(lhs);
  if (ref == 0.0) return 0.0;
  return l2_distance(lhs, rhs) / ref;
}

SampledField reconstruct(const SampledField& f, double lambda, int cutoff) {
  if (!(lambda > 0)) throw std::domain_error("reconstruct: lambda must be > 0");
  if (cutoff < 0) throw std::domain_error("reconstruct: cutoff must be >= 0");
  const double n = f.grid.half_dim;
  const double coeff = std::pow(lambda / (2.0 * std::numbers::pi), n);
  SampledField sum = zero_field(f.grid);
  for (int k = 0; k <= cutoff; ++k) axpy(sum, coeff, project(f, k, lambda));
  return sum;
}

}  // namespace metivier::twisted
