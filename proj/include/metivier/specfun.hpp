#pragma once

#include <functional>
#include <span>

namespace metivier::specfun {

struct LaguerreParams {
  int degree = 0;    // k >= 0
  double alpha = 0;  // type parameter, > -1
};

// Radial profile of the special Hermite function
//   phi_k^lambda(z) = L_k^{n-1}(lambda |z|^2 / 2) exp(-lambda |z|^2 / 4),
// z in R^{2n}.
struct HermiteProfile {
  int degree = 0;     // k >= 0
  int half_dim = 1;   // n >= 1
  double lambda = 1;  // > 0
};

// Generalised Laguerre polynomial L_k^alpha(x) by the upward three-term
// recurrence. Stable on x >= 0, which is the only regime used here.
double laguerre(int degree, double alpha, double x);

double special_hermite_radial(const HermiteProfile& profile, double abs_z_squared);
double special_hermite(const HermiteProfile& profile, std::span<const double> z);

// L^2(R^{2n}) norm of phi_k^lambda via adaptive radial quadrature of
// L_k^{n-1}(u)^2 e^{-u} u^{n-1}; scales as lambda^{-n/2}.
double special_hermite_l2_norm(int degree, int half_dim, double lambda);

// integral_0^umax of L_j^a L_k^a e^{-u} u^a du to the given absolute
// tolerance (umax chosen past the Laguerre oscillatory region).
double laguerre_product_integral(int j, int k, double alpha, double abs_tol);

// Adaptive Simpson quadrature; throws on non-convergence.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 48);
double adaptive_simpson_seeded(const std::function<double(double)>& f, double a,
                               double b, double abs_tol, int seed_panels,
                               int max_depth = 48);

}  // namespace metivier::specfun
