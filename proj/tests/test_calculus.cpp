#include "metivier/calculus.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "metivier/rng.hpp"
#include "metivier/twisted.hpp"

using namespace metivier;
using namespace metivier::calculus;

namespace {

const CalculusSpec kFull{Family::homogeneous, 1, 1, 1};

// random admissible parameters for the root suite
struct RandomSpec {
  CalculusSpec spec;
  double mu;
  int mode;
};

RandomSpec draw(const CounterRng& rng, std::uint64_t i) {
  RandomSpec r;
  r.spec.family = Family::homogeneous;
  r.spec.alpha = rng.uniform(8 * i, 0.5, 3.0);
  r.spec.beta = rng.uniform(8 * i + 1, 0.5, 3.0);
  const double mag = rng.uniform(8 * i + 2, 0.5, 3.0);
  r.spec.gamma = rng.uniform(8 * i + 3) < 0.5 ? mag : -mag;
  r.mu = std::pow(10.0, rng.uniform(8 * i + 4, -3.0, 3.0));
  r.mode = static_cast<int>(rng.uniform(8 * i + 5, 0.0, 51.0));
  return r;
}

}  // namespace

TEST_CASE("m evaluation") {
  CHECK(eval_m(kFull, 1.0, 1.0) == 2.0);
  CalculusSpec inhom{Family::inhomogeneous, 2.5, 0.7, -1.5};
  CHECK(eval_m(inhom, 0.0, 0.0) == 1.0);
  CalculusSpec sqrt_spec{Family::homogeneous, 2, 1, 0.5};
  CHECK(eval_m(sqrt_spec, 3.0, 4.0) == doctest::Approx(std::sqrt(13.0)).epsilon(1e-14));
  CalculusSpec pole{Family::homogeneous, 1, 1, -1};
  CHECK_THROWS_AS(eval_m(pole, 0.0, 0.0), std::domain_error);
}

TEST_CASE("named roots") {
  SpectralPoint p = solve_mu_k(kFull, 2.0, 0, 1);
  CHECK(p.root == doctest::Approx(1.0).epsilon(1e-12));
  p = solve_mu_k(kFull, 6.0, 0, 1);
  CHECK(p.root == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(p.derivative == doctest::Approx(0.2).epsilon(1e-10));

  CalculusSpec resolvent{Family::inhomogeneous, 1, 1, -1};
  p = solve_mu_k(resolvent, 1.0 / 3.0, 0, 1);
  CHECK(p.root == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(solve_mu_k(resolvent, 1.5, 0, 1), std::domain_error);
}

TEST_CASE("root certificate, strict bound and derivative window") {
  CounterRng rng(90210);
  int checked = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    RandomSpec r = draw(rng, i);
    const SpectralPoint p = solve_mu_k(r.spec, r.mu, r.mode, 1);
    const double c = 2.0 * r.mode + 1.0;

    // defining equation within 1e-12 relative
    const double m_back = eval_m(r.spec, c * p.root, p.root * p.root);
    CHECK(std::abs(m_back - r.mu) <= 1e-12 * r.mu);

    // strict upper bound (allowing the bisection tolerance)
    const double bound = root_upper_bound(r.spec, r.mu, r.mode, 1);
    CHECK(p.root * (1.0 - 5e-13) < bound);

    // mu |mu_k'| / mu_k inside the comparability window
    const double ratio = r.mu * std::abs(p.derivative) / p.root;
    const double g = std::abs(r.spec.gamma);
    const double c1 = 1.0 / (g * std::max(r.spec.alpha, 2.0 * r.spec.beta));
    const double c2 = 1.0 / (g * std::min(r.spec.alpha, 2.0 * r.spec.beta));
    CHECK(ratio >= c1 * (1.0 - 1e-9));
    CHECK(ratio <= c2 * (1.0 + 1e-9));
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("finite difference cross-check of the derivative") {
  CounterRng rng(31415);
  for (std::uint64_t i = 0; i < 60; ++i) {
    RandomSpec r = draw(rng, i);
    const double delta = 1e-6 * r.mu;
    const SpectralPoint hi = solve_mu_k(r.spec, r.mu + delta, r.mode, 1);
    const SpectralPoint lo = solve_mu_k(r.spec, r.mu - delta, r.mode, 1);
    const SpectralPoint mid = solve_mu_k(r.spec, r.mu, r.mode, 1);
    const double fd = (hi.root - lo.root) / (2.0 * delta);
    CHECK(std::abs(fd - mid.derivative) <= 1e-6 * std::abs(mid.derivative));
  }
}

TEST_CASE("monotonicity of the roots") {
  for (double mu : {0.04, 1.7, 900.0}) {
    double prev = solve_mu_k(kFull, mu, 0, 1).root;
    for (int k = 1; k <= 24; ++k) {
      const double cur = solve_mu_k(kFull, mu, k, 1).root;
      CHECK(cur < prev);
      prev = cur;
    }
  }
  CalculusSpec resolvent{Family::inhomogeneous, 1.3, 0.8, -2.0};
  double prev_root = solve_mu_k(resolvent, 0.05, 3, 1).root;
  for (double mu : {0.2, 0.5, 0.8, 0.97}) {
    const double cur = solve_mu_k(resolvent, mu, 3, 1).root;
    CHECK(cur < prev_root);
    prev_root = cur;
  }
}

namespace {

// f(V, z) = e^{-i lambda0 omega z} e^{-(z/s)^2} u(V) with u a projected mode;
// the gaussian envelope keeps the z-spectrum concentrated at lambda0 omega.
twisted::VZField resonant_mode(const twisted::GridSpec& vg, int z_points,
                               double z_half_width, int k, double lambda0,
                               int omega, double envelope_width) {
  twisted::SampledField g = twisted::zero_field(vg);
  const int N = vg.points_per_axis;
  for (int i1 = 0; i1 < N; ++i1)
    for (int i2 = 0; i2 < N; ++i2) {
      const double x = vg.coord(i1) - 0.4, y = vg.coord(i2) + 0.3;
      g.values[static_cast<std::size_t>(i1) * N + i2] = std::exp(-0.35 * (x * x + y * y));
    }
  twisted::SampledField u = twisted::project(g, k, lambda0 * omega);
  twisted::VZField f = twisted::zero_vzfield(vg, z_points, z_half_width);
  for (std::size_t iv = 0; iv < vg.point_count(); ++iv)
    for (int m = 0; m < z_points; ++m) {
      const double z = f.z_coord(m);
      const double arg = -lambda0 * omega * z;
      const double env = std::exp(-(z / envelope_width) * (z / envelope_width));
      f.values[iv * z_points + m] = env * u.values[iv] * cplx{std::cos(arg), std::sin(arg)};
    }
  return f;
}

}  // namespace

TEST_CASE("restriction operator picks out a resonant mode") {
  twisted::GridSpec vg{1, 8.0, 64};
  // the envelope must resolve the mu_k spacing (~0.34 here): distinct k ride
  // distinct twists, so only the z-spectrum separates the terms
  const int nz = 88;
  const double lz = 44.0, width = 16.0;
  const double mu = 5.0;
  const int k0 = 1;
  const SpectralPoint pt = solve_mu_k(kFull, mu, k0, 1);

  twisted::VZField f = resonant_mode(vg, nz, lz, k0, pt.root, +1, width);
  RestrictionResult r = restriction_apply(f, mu, kFull, 4);

  // mode bookkeeping oracle: only the (k0, +) term survives, giving
  //   mu_k^{n+d-1} mu_k' x [envelope spectrum at resonance] x (2pi)^n mu_k^{-n}
  // on the de-enveloped mode e^{-i mu_k z} u(V).
  double env_mass = 0;  // (2pi)^{-1} h_z sum env(z_m)
  for (int m = 0; m < nz; ++m) {
    const double z = f.z_coord(m);
    env_mass += std::exp(-(z / width) * (z / width));
  }
  env_mass *= f.z_spacing() / (2.0 * std::numbers::pi);
  const double expect_scale =
      pt.root * pt.derivative * env_mass * (2.0 * std::numbers::pi) / pt.root /
      (2.0 * std::numbers::pi);
  twisted::VZField expected = resonant_mode(vg, nz, lz, k0, pt.root, +1, 1e9);
  for (cplx& v : expected.values) v *= expect_scale;
  CHECK(twisted::l2_distance(r.field, expected) <= 2e-3 * twisted::l2_norm(expected));
}

TEST_CASE("off-resonant input leaks only through interpolation") {
  twisted::GridSpec vg{1, 8.0, 64};
  const double mu = 5.0;
  // z-frequency away from every mu_k (k <= 4) and v-mode k0 = 7 orthogonal
  // to the retained projectors
  twisted::VZField f = resonant_mode(vg, 64, 16.0, 7, 2.4, +1, 4.0);
  RestrictionResult r = restriction_apply(f, mu, kFull, 4);
  CHECK(twisted::l2_norm(r.field) <= 1e-3 * twisted::l2_norm(f));
}

TEST_CASE("spectral eigen-relation of the restriction output") {
  twisted::GridSpec vg{1, 8.0, 48};
  const double mu = 5.0;
  const SpectralPoint p1 = solve_mu_k(kFull, mu, 1, 1);

  SUBCASE("single resonant mode") {
    twisted::VZField f = resonant_mode(vg, 48, 12.0, 1, p1.root, +1, 4.0);
    auto res = eigen_check(f, mu, kFull, 4);
    REQUIRE(res.has_value());
    CHECK(*res <= 1e-10);
  }
  SUBCASE("three resonant modes") {
    twisted::VZField f =
        resonant_mode(vg, 48, 12.0, 0, solve_mu_k(kFull, mu, 0, 1).root, +1, 4.0);
    twisted::VZField f2 =
        resonant_mode(vg, 48, 12.0, 2, solve_mu_k(kFull, mu, 2, 1).root, -1, 4.0);
    twisted::VZField f3 =
        resonant_mode(vg, 48, 12.0, 3, solve_mu_k(kFull, mu, 3, 1).root, +1, 4.0);
    for (std::size_t i = 0; i < f.values.size(); ++i)
      f.values[i] += 0.7 * f2.values[i] - cplx{0, 0.4} * f3.values[i];
    auto res = eigen_check(f, mu, kFull, 4);
    REQUIRE(res.has_value());
    CHECK(*res <= 1e-10);
  }
  SUBCASE("off-resonant input yields the undefined signal") {
    twisted::GridSpec vg64{1, 8.0, 64};
    twisted::VZField f = resonant_mode(vg64, 64, 16.0, 7, 2.4, +1, 4.0);
    CHECK_FALSE(eigen_check(f, mu, kFull, 2).has_value());
  }
}

TEST_CASE("restriction rejects out-of-range configurations") {
  twisted::GridSpec vg{1, 6.0, 16};
  twisted::VZField f = twisted::zero_vzfield(vg, 16, 4.0);
  f.values[0] = 1.0;
  CalculusSpec resolvent{Family::inhomogeneous, 1, 1, -1};
  CHECK_THROWS_AS(restriction_apply(f, 2.0, resolvent, 2), std::domain_error);
  // nyquist: z spacing 0.5 -> limit ~ 6.3; mu_0(100) ~ 9.5
  CHECK_THROWS_AS(restriction_apply(f, 100.0, kFull, 2), std::domain_error);
}
