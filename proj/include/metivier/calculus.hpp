#pragma once

#include <optional>
#include <vector>

#include "metivier/grid.hpp"

namespace metivier::calculus {

using twisted::cplx;

enum class Family { homogeneous, inhomogeneous };

// m(a, b) = (a^alpha + b^beta)^gamma or (1 + a^alpha + b^beta)^gamma.
struct CalculusSpec {
  Family family = Family::homogeneous;
  double alpha = 1;
  double beta = 1;
  double gamma = 1;
  void validate() const;
};

double eval_m(const CalculusSpec& spec, double a, double b);

// Whether mu lies in the spectral range of m along the joint spectrum rays.
bool mu_in_range(const CalculusSpec& spec, double mu);

struct SpectralPoint {
  double mu = 0;
  int mode = 0;          // k
  double root = 0;       // mu_k: the lambda with m((2k+n)lambda, lambda^2) = mu
  double derivative = 0; // mu_k' = d mu_k / d mu (signed)
};

// Analytic upper end of the root bracket,
//   min{ s^{1/(2 beta)}, (2k+n)^{-1} s^{1/alpha} },  s = mu^{1/gamma} (- 1).
double root_upper_bound(const CalculusSpec& spec, double mu, int mode, int half_dim);

// Bisection on the strictly increasing lambda -> m-argument map, to 1e-13
// relative; derivative by implicit differentiation.
SpectralPoint solve_mu_k(const CalculusSpec& spec, double mu, int mode, int half_dim);

// One (k, omega) summand of the restriction operator on the d = 1, n = 1
// grid: scale * e^{-i lambda omega z} * v_values(V).
struct ModeComponent {
  int mode = 0;
  int omega = 1;        // +1 or -1
  double lambda = 0;    // mu_k
  double scale = 0;     // (2pi)^{-n} mu_k^{n+d-1} |mu_k'|
  std::vector<cplx> v_values;
};

struct RestrictionResult {
  twisted::VZField field;
  std::vector<ModeComponent> components;
  double mu = 0;
  int cutoff = 0;
};

// Band-limited evaluation of the central transform
// (2pi)^{-1} h_z sum_m f(V, z_m) e^{i eta z_m} at arbitrary eta.
std::vector<cplx> central_transform(const twisted::VZField& f, double eta);

// P_mu^m f on the desk-scale Heisenberg configuration (d = 1, n = 1):
// Fourier transform in z interpolated to +-mu_k, Lambda_k^{mu_k omega} in v,
// weight mu_k^{n+d-1} |mu_k'|, resynthesised with e^{-i mu_k omega z}.
// Terms whose central slice is below skip_threshold * (largest slice norm)
// are dropped from the sum.
RestrictionResult restriction_apply(const twisted::VZField& f, double mu,
                                    const CalculusSpec& spec, int cutoff,
                                    double skip_threshold = 0.0);

// || m(L, -Delta_z) P_mu f - mu P_mu f ||_2 / || mu P_mu f ||_2 with m
// applied diagonally in the spectral representation of the output. Empty
// when the output vanishes (off-resonant input).
std::optional<double> eigen_check(const twisted::VZField& f, double mu,
                                  const CalculusSpec& spec, int cutoff);

twisted::VZField resynthesize(const RestrictionResult& r);

}  // namespace metivier::calculus
