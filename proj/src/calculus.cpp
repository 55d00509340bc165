#include "metivier/calculus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "metivier/parallel.hpp"
#include "metivier/twisted.hpp"

namespace metivier::calculus {

void CalculusSpec::validate() const {
  if (!(alpha > 0)) throw std::invalid_argument("CalculusSpec: alpha must be > 0");
  if (!(beta > 0)) throw std::invalid_argument("CalculusSpec: beta must be > 0");
  if (gamma == 0) throw std::invalid_argument("CalculusSpec: gamma must be nonzero");
}

double eval_m(const CalculusSpec& spec, double a, double b) {
  spec.validate();
  if (a < 0 || b < 0) throw std::domain_error("eval_m: arguments must be >= 0");
  const double shift = spec.family == Family::inhomogeneous ? 1.0 : 0.0;
  const double s = shift + std::pow(a, spec.alpha) + std::pow(b, spec.beta);
  if (s == 0 && spec.gamma < 0)
    throw std::domain_error("eval_m: pole at the origin for negative gamma");
  return std::pow(s, spec.gamma);
}

bool mu_in_range(const CalculusSpec& spec, double mu) {
  spec.validate();
  if (!(mu > 0)) return false;
  if (spec.family == Family::homogeneous) return true;
  // base 1 + a^alpha + b^beta > 1 on the open spectrum rays
  return spec.gamma > 0 ? mu > 1 : mu < 1;
}

double root_upper_bound(const CalculusSpec& spec, double mu, int mode, int half_dim) {
  spec.validate();
  if (mode < 0 || half_dim < 1)
    throw std::domain_error("root_upper_bound: bad mode or dimension");
  const double s = std::pow(mu, 1.0 / spec.gamma) -
                   (spec.family == Family::inhomogeneous ? 1.0 : 0.0);
  if (!(s > 0))
    throw std::domain_error("root_upper_bound: mu outside the spectral range");
  const double c = 2.0 * mode + half_dim;
  return std::min(std::pow(s, 0.5 / spec.beta), std::pow(s, 1.0 / spec.alpha) / c);
}

SpectralPoint solve_mu_k(const CalculusSpec& spec, double mu, int mode, int half_dim) {
  const double target = std::pow(mu, 1.0 / spec.gamma) -
                        (spec.family == Family::inhomogeneous ? 1.0 : 0.0);
  if (!(target > 0))
    throw std::domain_error("solve_mu_k: no positive root for this mu");
  const double c = 2.0 * mode + half_dim;
  auto arg = [&](double lam) {
    return std::pow(c * lam, spec.alpha) + std::pow(lam, 2.0 * spec.beta);
  };
  double lo = 0.0, hi = root_upper_bound(spec, mu, mode, half_dim);
  // the upper end satisfies arg(hi) >= target; widen defensively for rounding
  while (arg(hi) < target) hi *= 1.0 + 1e-12;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (arg(mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * hi) break;
  }
  const double lam = 0.5 * (lo + hi);
  SpectralPoint pt;
  pt.mu = mu;
  pt.mode = mode;
  pt.root = lam;
  const double denom = spec.alpha * std::pow(c, spec.alpha) * std::pow(lam, spec.alpha - 1.0) +
                       2.0 * spec.beta * std::pow(lam, 2.0 * spec.beta - 1.0);
  pt.derivative =
      (1.0 / spec.gamma) * std::pow(mu, 1.0 / spec.gamma - 1.0) / denom;
  return pt;
}

std::vector<cplx> central_transform(const twisted::VZField& f, double eta) {
  f.validate();
  const std::size_t nv = f.vgrid.point_count();
  const int nz = f.z_points;
  std::vector<cplx> phase(nz);
  for (int m = 0; m < nz; ++m) {
    const double arg = eta * f.z_coord(m);
    phase[m] = cplx{std::cos(arg), std::sin(arg)};
  }
  const double w = f.z_spacing() / (2.0 * std::numbers::pi);
  std::vector<cplx> out(nv);
  parallel_for(0, nv, [&](std::size_t iv) {
    cplx s{0, 0};
    const cplx* row = &f.values[iv * nz];
    for (int m = 0; m < nz; ++m) s += row[m] * phase[m];
    out[iv] = s * w;
  });
  return out;
}

RestrictionResult restriction_apply(const twisted::VZField& f, double mu,
                                    const CalculusSpec& spec, int cutoff,
                                    double skip_threshold) {
  f.validate();
  spec.validate();
  if (cutoff < 0) throw std::domain_error("restriction_apply: cutoff must be >= 0");
  if (!mu_in_range(spec, mu))
    throw std::domain_error("restriction_apply: mu outside the spectral range");
  const int n = f.vgrid.half_dim;  // = 1
  const int d = 1;
  const double nyquist = std::numbers::pi / f.z_spacing();

  RestrictionResult res;
  res.mu = mu;
  res.cutoff = cutoff;
  res.field = twisted::zero_vzfield(f.vgrid, f.z_points, f.z_half_width);

  struct Slice {
    int mode;
    int omega;
    double lambda;
    double scale;
    std::vector<cplx> transform;
    double norm = 0;
  };
  std::vector<Slice> slices;
  for (int k = 0; k <= cutoff; ++k) {
    const SpectralPoint pt = solve_mu_k(spec, mu, k, n);
    if (pt.root > nyquist)
      throw std::domain_error(
          "restriction_apply: mu_k exceeds the z-grid Nyquist frequency");
    const double scale = std::pow(pt.root, n + d - 1) * std::abs(pt.derivative) /
                         std::pow(2.0 * std::numbers::pi, n);
    for (int omega : {+1, -1}) {
      Slice s;
      s.mode = k;
      s.omega = omega;
      s.lambda = pt.root;
      s.scale = scale;
      s.transform = central_transform(f, pt.root * omega);
      for (const cplx& v : s.transform) s.norm += std::norm(v);
      s.norm = std::sqrt(s.norm);
      slices.push_back(std::move(s));
    }
  }
  double max_norm = 0;
  for (const Slice& s : slices) max_norm = std::max(max_norm, s.norm);

  const int nz = f.z_points;
  const std::size_t nv = f.vgrid.point_count();
  for (Slice& s : slices) {
    if (s.norm <= skip_threshold * max_norm) continue;
    twisted::SampledField g{f.vgrid, std::move(s.transform)};
    twisted::SampledField proj =
        twisted::project(g, s.mode, s.lambda * s.omega);

    ModeComponent comp;
    comp.mode = s.mode;
    comp.omega = s.omega;
    comp.lambda = s.lambda;
    comp.scale = s.scale;
    comp.v_values = std::move(proj.values);
    // resynthesis phase e^{-i mu_k omega z}
    std::vector<cplx> zphase(nz);
    for (int m = 0; m < nz; ++m) {
      const double arg = -s.lambda * s.omega * f.z_coord(m);
      zphase[m] = cplx{std::cos(arg), std::sin(arg)};
    }
    parallel_for(0, nv, [&](std::size_t iv) {
      cplx* row = &res.field.values[iv * nz];
      const cplx a = comp.scale * comp.v_values[iv];
      for (int m = 0; m < nz; ++m) row[m] += a * zphase[m];
    });
    res.components.push_back(std::move(comp));
  }
  return res;
}

twisted::VZField resynthesize(const RestrictionResult& r) {
  twisted::VZField out = twisted::zero_vzfield(r.field.vgrid, r.field.z_points,
                                               r.field.z_half_width);
  const int nz = out.z_points;
  for (const ModeComponent& comp : r.components) {
    for (std::size_t iv = 0; iv < out.vgrid.point_count(); ++iv) {
      const cplx a = comp.scale * comp.v_values[iv];
      for (int m = 0; m < nz; ++m) {
        const double arg = -comp.lambda * comp.omega * out.z_coord(m);
        out.values[iv * nz + m] += a * cplx{std::cos(arg), std::sin(arg)};
      }
    }
  }
  return out;
}

std::optional<double> eigen_check(const twisted::VZField& f, double mu,
                                  const CalculusSpec& spec, int cutoff) {
  RestrictionResult r = restriction_apply(f, mu, spec, cutoff);
  const double base = twisted::l2_norm(r.field);
  const double fnorm = twisted::l2_norm(f);
  // discrete zero: off-resonant inputs leave only interpolation leakage,
  // bounded by 1e-3 relative
  if (base <= 1e-3 * std::max(fnorm, 1e-300)) return std::nullopt;

  // m acts diagonally on the joint eigenmodes that make up the output:
  // the (k, omega) component sits on the spectrum ray ((2k+n)mu_k, mu_k^2).
  RestrictionResult scaled = r;
  const int n = f.vgrid.half_dim;
  for (ModeComponent& comp : scaled.components) {
    const double mval =
        eval_m(spec, (2.0 * comp.mode + n) * comp.lambda, comp.lambda * comp.lambda);
    comp.scale *= mval;
  }
  twisted::VZField applied = resynthesize(scaled);
  double num = 0;
  for (std::size_t i = 0; i < applied.values.size(); ++i)
    num += std::norm(applied.values[i] - mu * r.field.values[i]);
  const double weight = f.vgrid.cell_volume() * f.z_spacing();
  return std::sqrt(num * weight) / (mu * base);
}

}  // namespace metivier::calculus
