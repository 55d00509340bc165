#include "metivier/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "metivier/parallel.hpp"

namespace metivier::bounds {

double phi(double s, int n) {
  if (n < 1) throw std::domain_error("phi: n must be >= 1");
  if (s < 0 || s > 0.5) throw std::domain_error("phi: s must lie in [0, 1/2]");
  const double s_star = 1.0 / (2.0 * n + 1.0);
  return s <= s_star ? -0.5 * s : n * s - 0.5;
}

double ExponentParams::r_conj() const {
  return r == 1.0 ? std::numeric_limits<double>::infinity() : r / (r - 1.0);
}

double ExponentParams::bracket() const {
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double inv_rc = r == 1.0 ? 0.0 : 1.0 - 1.0 / r;
  return n * (1.0 / p - inv_q) + d * (1.0 / r - inv_rc);
}

void ExponentParams::validate() const {
  if (!(alpha > 0) || !(beta > 0) || gamma == 0)
    throw std::invalid_argument("ExponentParams: need alpha, beta > 0 and gamma != 0");
  if (!(p >= 1 && p <= 2)) throw std::invalid_argument("ExponentParams: p must be in [1, 2]");
  if (!(q >= 2)) throw std::invalid_argument("ExponentParams: q must be in [2, inf]");
  if (n < 1 || d < 1) throw std::invalid_argument("ExponentParams: n, d must be >= 1");
  const double r_max = 2.0 * (d + 1.0) / (d + 3.0);
  if (!(r >= 1 && r <= r_max + 1e-12))
    throw std::invalid_argument("ExponentParams: r must be in [1, 2(d+1)/(d+3)]");
}

ExponentSet exponents(const ExponentParams& params) {
  params.validate();
  const double inv_q = std::isinf(params.q) ? 0.0 : 1.0 / params.q;
  const double e = params.bracket();
  const double nu1 = phi(1.0 / params.p - 0.5, params.n) + phi(0.5 - inv_q, params.n);
  const double a = params.alpha, b = params.beta, g = params.gamma;

  ExponentSet out;
  out.nu1 = nu1;
  out.nu = nu1 - e;
  out.s_star = 1.0 / (2.0 * params.n + 1.0);
  out.p_star = 2.0 * (2.0 * params.n + 1.0) / (2.0 * params.n + 3.0);
  out.A = e / (2.0 * b * g) + (1.0 / g) * (1.0 / a - 0.5 / b) * (nu1 + 1.0) - 1.0;
  out.B = e / (a * g) - 1.0;
  out.C = e / (2.0 * b) + (1.0 / a - 0.5 / b) * (nu1 + 1.0) - 1.0;
  out.D = e / a - 1.0;
  return out;
}

NuAnalysis nu_analysis(double p, double q, double r, int n, int d) {
  ExponentParams params;
  params.p = p;
  params.q = q;
  params.r = r;
  params.n = n;
  params.d = d;
  params.validate();
  const double p_star = 2.0 * (2.0 * n + 1.0) / (2.0 * n + 3.0);
  const double p_star_conj = p_star / (p_star - 1.0);
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;

  NuAnalysis res;
  res.nu = exponents(params).nu;
  const bool low_p = p <= p_star;           // 1/p - 1/2 >= s*
  const bool high_q = inv_q <= 1.0 / p_star_conj;  // 1/2 - 1/q >= s*
  if (low_p && high_q)
    res.label = NuCase::a;
  else if (low_p)
    res.label = NuCase::b;
  else if (high_q)
    res.label = NuCase::c;
  else
    res.label = NuCase::d;
  return res;
}

SeriesPoint series_bound(const calculus::CalculusSpec& spec, double mu,
                         const ExponentParams& params, int initial_cutoff) {
  spec.validate();
  params.validate();
  const ExponentSet es = exponents(params);
  if (es.nu >= -1.0)
    throw std::domain_error("series_bound: nu >= -1, series diverges (excluded endpoint)");
  const int n = params.n;
  const double e = params.bracket();

  auto term = [&](int k) {
    const calculus::SpectralPoint pt = calculus::solve_mu_k(spec, mu, k, n);
    return std::abs(pt.derivative) * std::pow(pt.root, e - 1.0) *
           std::pow(2.0 * k + n, es.nu1);
  };

  // transition mode index from the mu_k bound: keep the cutoff past it so
  // the tail sits in the (2k+n)^nu power-decay regime.
  const double s = std::pow(mu, 1.0 / spec.gamma) -
                   (spec.family == calculus::Family::inhomogeneous ? 1.0 : 0.0);
  if (!(s > 0)) throw std::domain_error("series_bound: mu outside the spectral range");
  const double knee = std::pow(s, 1.0 / params.alpha - 0.5 / params.beta);
  int cutoff = std::max(initial_cutoff, 8);
  if (std::isfinite(knee) && knee > cutoff)
    cutoff = static_cast<int>(std::min(knee * 2.0, 2e8));

  std::vector<double> terms;
  double sum = 0;
  int lo = 0;
  SeriesPoint out;
  out.mu = mu;
  for (int round = 0; round < 48; ++round) {
    terms.assign(cutoff + 1 - lo, 0.0);
    parallel_for(0, terms.size(),
                 [&](std::size_t i) { terms[i] = term(lo + static_cast<int>(i)); });
    for (double t : terms) sum += t;
    const double last = term(cutoff);
    const double tail = last * (2.0 * cutoff + n) / (2.0 * (-es.nu - 1.0));
    out.value = sum + tail;
    out.tail_fraction = out.value > 0 ? tail / out.value : 0.0;
    out.terms = cutoff + 1;
    if (out.tail_fraction < 1e-4) return out;
    lo = cutoff + 1;
    cutoff *= 2;
  }
  throw std::runtime_error("series_bound: tail did not reach the requested fraction");
}

Prediction predicted_exponent(const calculus::CalculusSpec& spec,
                              const ExponentParams& params, double mu) {
  spec.validate();
  params.validate();
  if (!calculus::mu_in_range(spec, mu))
    throw std::domain_error("predicted_exponent: mu outside the spectral range");
  const ExponentSet es = exponents(params);
  const double g_exp = (1.0 / spec.gamma) * (1.0 / spec.alpha - 0.5 / spec.beta);

  Prediction out;
  const bool far_regime =
      spec.family == calculus::Family::homogeneous ||
      (spec.gamma > 0 ? mu >= 2.0 : mu <= 0.5);
  if (far_regime) {
    const bool use_a = std::pow(mu, g_exp) > 1.0;
    out.letter = use_a ? 'A' : 'B';
    out.exponent = use_a ? es.A : es.B;
    out.in_one_minus_mu = false;
    out.regime = spec.family == calculus::Family::homogeneous
                     ? "homogeneous"
                     : (spec.gamma > 0 ? "mu->inf" : "mu->0+");
    return out;
  }
  // inhomogeneous near mu -> 1 from the sign(gamma) side
  const double eps = std::abs(1.0 - mu);
  if (eps == 0.0)
    throw std::domain_error("predicted_exponent: mu = 1 is the spectral bottom");
  const bool use_c = std::pow(eps, 1.0 / spec.alpha - 0.5 / spec.beta) > 1.0;
  out.letter = use_c ? 'C' : 'D';
  out.exponent = use_c ? es.C : es.D;
  out.in_one_minus_mu = true;
  out.regime = spec.gamma > 0 ? "mu->1+" : "mu->1-";
  return out;
}

LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::domain_error("fit_loglog: need at least 3 points");
  double prev_x = 0;
  bool first = true;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0) || !(y > 0))
      throw std::domain_error("fit_loglog: points must be strictly positive");
    if (!first && x <= prev_x)
      throw std::domain_error("fit_loglog: x must be strictly increasing");
    first = false;
    prev_x = x;
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(points.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0) throw std::domain_error("fit_loglog: degenerate abscissae");
  LogLogFit fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  for (const auto& [x, y] : points)
    fit.max_residual = std::max(
        fit.max_residual,
        std::abs(std::log(y) - (fit.intercept + fit.slope * std::log(x))));
  return fit;
}

std::vector<BoundCurvePoint> bound_curve(const calculus::CalculusSpec& spec,
                                         const ExponentParams& params,
                                         const std::vector<double>& mus) {
  std::vector<BoundCurvePoint> out;
  out.reserve(mus.size());
  for (double mu : mus) {
    const SeriesPoint sp = series_bound(spec, mu, params);
    const Prediction pred = predicted_exponent(spec, params, mu);
    out.push_back({mu, sp.value, sp.tail_fraction, pred.letter, pred.exponent});
  }
  return out;
}

}  // namespace metivier::bounds
