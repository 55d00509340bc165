#include "metivier/specfun.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace metivier::specfun {

double laguerre(int degree, double alpha, double x) {
  if (degree < 0) throw std::domain_error("laguerre: degree must be >= 0");
  if (alpha <= -1.0) throw std::domain_error("laguerre: alpha must be > -1");
  if (!std::isfinite(x)) throw std::domain_error("laguerre: non-finite argument");
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 2; k <= degree; ++k) {
    double next = ((2 * k - 1 + alpha - x) * cur - (k - 1 + alpha) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

static void check_profile(const HermiteProfile& p) {
  if (p.degree < 0) throw std::domain_error("special_hermite: degree must be >= 0");
  if (p.half_dim < 1) throw std::domain_error("special_hermite: half_dim must be >= 1");
  if (!(p.lambda > 0)) throw std::domain_error("special_hermite: lambda must be > 0");
}

namespace {

// L_k^alpha(x) e^{-x/2}: the scaling commutes with the linear recurrence, so
// seeding with scaled initial values avoids overflow at large x and k.
double laguerre_scaled(int degree, double alpha, double x) {
  const double s = std::exp(-0.5 * x);
  if (degree == 0) return s;
  double prev = s;
  double cur = (1.0 + alpha - x) * s;
  for (int k = 2; k <= degree; ++k) {
    double next = ((2 * k - 1 + alpha - x) * cur - (k - 1 + alpha) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double special_hermite_radial(const HermiteProfile& profile, double abs_z_squared) {
  check_profile(profile);
  const double u = 0.5 * profile.lambda * abs_z_squared;
  return laguerre_scaled(profile.degree, profile.half_dim - 1, u);
}

double special_hermite(const HermiteProfile& profile, std::span<const double> z) {
  if (z.size() != static_cast<std::size_t>(2 * profile.half_dim))
    throw std::invalid_argument("special_hermite: point dimension must be 2n");
  double r2 = 0;
  for (double c : z) r2 += c * c;
  return special_hermite_radial(profile, r2);
}

namespace {

struct SimpsonPanel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, SimpsonPanel p, double tol,
             int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m), rm = 0.5 * (m + p.b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  // roundoff floor: the local L^1 mass bounds what double precision can
  // resolve (the high-degree recurrences carry ~1e-13 relative noise), and a
  // panel without a representable midpoint cannot be refined further
  const double mass = (p.b - p.a) / 6.0 *
                      (std::abs(p.fa) + 4.0 * std::abs(flm) + 2.0 * std::abs(p.fm) +
                       4.0 * std::abs(frm) + std::abs(p.fb));
  if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= 1e-12 * mass ||
      lm <= p.a || rm >= p.b)
    return left + right + delta / 15.0;
  if (depth <= 0)
    throw std::runtime_error("adaptive_simpson: quadrature did not converge");
  return adapt(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         adapt(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
  return adaptive_simpson_seeded(f, a, b, abs_tol, 32, max_depth);
}

double adaptive_simpson_seeded(const std::function<double(double)>& f, double a,
                               double b, double abs_tol, int seed_panels,
                               int max_depth) {
  if (!(b > a)) return 0.0;
  // Fixed seed split so oscillatory integrands cannot fool the first
  // Richardson estimate.
  const double h = (b - a) / seed_panels;
  double total = 0.0;
  for (int i = 0; i < seed_panels; ++i) {
    const double lo = a + i * h, hi = lo + h;
    const double flo = f(lo), fmid = f(0.5 * (lo + hi)), fhi = f(hi);
    SimpsonPanel panel{lo, hi, flo, fmid, fhi, simpson(lo, hi, flo, fmid, fhi)};
    total += adapt(f, panel, abs_tol / seed_panels, max_depth);
  }
  return total;
}

double laguerre_product_integral(int j, int k, double alpha, double abs_tol) {
  if (j < 0 || k < 0) throw std::domain_error("laguerre_product_integral: negative degree");
  if (alpha <= -1.0) throw std::domain_error("laguerre_product_integral: alpha must be > -1");
  const int kmax = std::max(j, k);
  // the 4x factor clears the oscillatory region; the floor keeps the e^{-u}
  // tail below 1e-11 even at degree zero
  const double umax = std::max(4.0 * (4.0 * kmax + 2.0 * alpha + 4.0), 40.0);
  // e^{-u} folded into the two scaled factors; the Laguerre roots cluster
  // near u = 0, so the seed resolution tracks the degree.
  const int seeds = std::clamp(4 * (kmax + 1), 64, 4096);
  if (j == k) {
    auto integrand = [&](double u) {
      const double v = laguerre_scaled(k, alpha, u);
      return v * v * std::pow(u, alpha);
    };
    return adaptive_simpson_seeded(integrand, 0.0, umax, abs_tol, seeds);
  }
  auto integrand = [&](double u) {
    return laguerre_scaled(j, alpha, u) * laguerre_scaled(k, alpha, u) *
           std::pow(u, alpha);
  };
  return adaptive_simpson_seeded(integrand, 0.0, umax, abs_tol, seeds);
}

double special_hermite_l2_norm(int degree, int half_dim, double lambda) {
  check_profile({degree, half_dim, lambda});
  const double alpha = half_dim - 1;
  // ||phi_k^lambda||_2^2 = pi^n (2/lambda)^n / Gamma(n) * I,
  //   I = int_0^inf L_k^{n-1}(u)^2 e^{-u} u^{n-1} du,
  // from radial coordinates and u = lambda r^2 / 2. I is of order
  // Gamma(k+n)/k!, which sets the absolute quadrature tolerance.
  const double scale =
      std::exp(std::lgamma(degree + alpha + 1.0) - std::lgamma(degree + 1.0));
  const double radial = laguerre_product_integral(degree, degree, alpha, 1e-11 * scale);
  const double n = half_dim;
  const double pref = std::pow(std::numbers::pi * 2.0 / lambda, n) / std::tgamma(n);
  return std::sqrt(pref * radial);
}

}  // namespace metivier::specfun
