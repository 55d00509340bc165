#include "metivier/group.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "metivier/gaussian.hpp"
#include "metivier/rng.hpp"

using namespace metivier;
using namespace metivier::group;

namespace {

Eigen::MatrixXd random_skew(int m, std::uint64_t seed) {
  CounterRng rng(seed);
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a(i, j) = rng.uniform(static_cast<std::uint64_t>(i) * m + j, -1.0, 1.0);
  return a - a.transpose();
}

}  // namespace

TEST_CASE("algebra invariants and fixtures") {
  StepTwoAlgebra h = heisenberg();
  CHECK(h.brackets[0](0, 1) == 1.0);
  h.validate();

  StepTwoAlgebra ms = muller_seeger_example();
  ms.validate();
  CHECK(ms.half_dim == 4);
  CHECK(ms.center_dim == 2);

  StepTwoAlgebra bad = heisenberg();
  bad.brackets[0](0, 1) = 2.0;  // no longer skew
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("muller-seeger determinant identity") {
  // det J_z = (z1^4 + z2^4)^2
  CHECK(muller_seeger_j(1, 0).determinant() == doctest::Approx(1.0).epsilon(1e-12));
  const double z1 = 0.3, z2 = -1.2;
  const double expect = std::pow(std::pow(z1, 4) + std::pow(z2, 4), 2);
  CHECK(muller_seeger_j(z1, z2).determinant() ==
        doctest::Approx(expect).epsilon(1e-10));
  CounterRng rng(17);
  for (int t = 0; t < 100; ++t) {
    const double a = rng.uniform(2 * t, -2.0, 2.0), b = rng.uniform(2 * t + 1, -2.0, 2.0);
    const Eigen::MatrixXd j = muller_seeger_j(a, b);
    CHECK((j + j.transpose()).norm() <= 1e-12 * std::max(j.norm(), 1.0));
    const double det_expect = std::pow(std::pow(a, 4) + std::pow(b, 4), 2);
    CHECK(j.determinant() == doctest::Approx(det_expect).epsilon(1e-10));
  }
}

TEST_CASE("metivier and h-type verdicts") {
  StepTwoAlgebra h = heisenberg();
  SphereScanResult hm = is_metivier(h, 100);
  CHECK(hm.verdict);
  CHECK(hm.margin == doctest::Approx(1.0));
  CHECK(is_htype(h, 100).verdict);

  StepTwoAlgebra ms = muller_seeger_example();
  CHECK(is_metivier(ms, 10000).verdict);
  SphereScanResult ht = is_htype(ms, 10000);
  CHECK_FALSE(ht.verdict);
  CHECK(ht.margin >= 0.1);

  StepTwoAlgebra degenerate = heisenberg();
  degenerate.brackets[0].setZero();
  CHECK_FALSE(is_metivier(degenerate, 100).verdict);

  StepTwoAlgebra scaled = heisenberg();
  scaled.brackets[0] *= 2.0;  // J^T J = 4 I
  CHECK_FALSE(is_htype(scaled, 100).verdict);
  CHECK(is_metivier(scaled, 100).verdict);
}

TEST_CASE("h-type implies metivier on the test algebras") {
  for (int n : {1, 2, 3}) {
    StepTwoAlgebra h = heisenberg(n);
    if (is_htype(h, 64).verdict) CHECK(is_metivier(h, 64).verdict);
  }
  StepTwoAlgebra ms = muller_seeger_example();
  if (is_htype(ms, 512).verdict) CHECK(is_metivier(ms, 512).verdict);
}

TEST_CASE("symplectic normalisation") {
  const Eigen::MatrixXd j0 = standard_symplectic_form(2);
  Eigen::MatrixXd a = symplectic_normalize(j0);
  CHECK((a.transpose() * j0 * a - j0).norm() <= 1e-12);

  Eigen::MatrixXd scaled_form = 3.0 * standard_symplectic_form(3);
  a = symplectic_normalize(scaled_form);
  CHECK((a.transpose() * scaled_form * a - standard_symplectic_form(3)).norm() <= 1e-12);

  for (int m : {2, 4, 6, 8})
    for (int rep = 0; rep < 50; ++rep) {
      Eigen::MatrixXd j = random_skew(m, 1000 + 10 * m + rep);
      if (std::abs(j.determinant()) < 1e-6) continue;
      Eigen::MatrixXd t = symplectic_normalize(j);
      CHECK((t.transpose() * j * t - standard_symplectic_form(m / 2)).norm() <= 1e-10);
    }

  CHECK_THROWS(symplectic_normalize(Eigen::MatrixXd::Zero(4, 4)));
}

TEST_CASE("partial radon transform closed forms") {
  // d = 1 reduces to evaluation on the Z_omega line
  GaussianTestFunction f1 = isotropic_gaussian(2, 1, 1.0);
  Eigen::VectorXd omega1 = Eigen::VectorXd::Constant(1, 1.0);
  Eigen::VectorXd v(2);
  v << 0.3, -0.4;
  Eigen::VectorXd x(3);
  x << 0.3, -0.4, 0.7;
  CHECK(std::abs(partial_radon(f1, omega1, v, 0.7) - f1(x)) <= 1e-14);

  // d = 2, f = e^{-|Z|^2} a(V), omega = (1,0): sqrt(pi) e^{-t^2} a(V)
  GaussianTestFunction f2 = isotropic_gaussian(2, 2, 1.0);
  Eigen::VectorXd omega2(2);
  omega2 << 1.0, 0.0;
  const double t = 0.55;
  const cplx got = partial_radon(f2, omega2, v, t);
  const double av = std::exp(-v.squaredNorm());
  const double expect = std::sqrt(std::numbers::pi) * std::exp(-t * t) * av;
  CHECK(std::abs(got - expect) <= 1e-12 * expect);

  // linearity over amplitudes
  GaussianTestFunction f3 = f2;
  f3.amplitude = cplx{2.0, -1.0};
  CHECK(std::abs(partial_radon(f3, omega2, v, t) - f3.amplitude * got) <= 1e-12);
}

TEST_CASE("central fourier transform against 1d quadrature") {
  GaussianTestFunction f = isotropic_gaussian(2, 1, 0.8);
  f.phase << 0.2, -0.1, 0.45;
  Eigen::VectorXd v(2);
  v << 0.25, -0.6;
  Eigen::VectorXd eta = Eigen::VectorXd::Constant(1, 1.3);
  // direct Riemann sum of (2pi)^{-1} int f(V,z) e^{i eta z} dz
  cplx sum{0, 0};
  const double hz = 1e-3;
  for (double z = -12.0; z <= 12.0; z += hz) {
    Eigen::VectorXd x(3);
    x << v(0), v(1), z;
    sum += f(x) * std::exp(cplx{0, eta(0) * z}) * hz;
  }
  sum /= 2.0 * std::numbers::pi;
  const cplx got = central_fourier(f, v, eta);
  CHECK(std::abs(got - sum) <= 1e-8 * std::abs(sum));
}

TEST_CASE("intertwining relation on gaussian probes") {
  CounterRng rng(4242);

  // z-independent behaviour at lambda = 0: both sides collapse to d/dv_j
  StepTwoAlgebra h = heisenberg();
  GaussianTestFunction f = isotropic_gaussian(2, 1, 0.7);
  Eigen::VectorXd omega1 = Eigen::VectorXd::Constant(1, 1.0);
  std::vector<Eigen::VectorXd> probes;
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd v(2);
    v << rng.uniform(2 * t, -1.5, 1.5), rng.uniform(2 * t + 1, -1.5, 1.5);
    probes.push_back(v);
  }
  CHECK(intertwining_residual(h, f, omega1, 0.0, 0, probes) <= 1e-12);

  // heisenberg, coupled gaussian, lambda = 1
  GaussianTestFunction g = isotropic_gaussian(2, 1, 0.9);
  g.quad(0, 2) = g.quad(2, 0) = 0.15;
  g.quad(1, 2) = g.quad(2, 1) = -0.1;
  g.phase << 0.3, -0.2, 0.5;
  g.validate();
  for (int j : {0, 1}) CHECK(intertwining_residual(h, g, omega1, 1.0, j, probes) <= 1e-6);

  // muller-seeger, random omega, lambda = 0.5
  StepTwoAlgebra ms = muller_seeger_example();
  GaussianTestFunction fm = isotropic_gaussian(8, 2, 0.6);
  for (int a = 0; a < 10; ++a) fm.phase(a) = rng.uniform(100 + a, -0.5, 0.5);
  for (int a = 0; a < 10; ++a)
    for (int b = a + 1; b < 10; ++b) {
      const double c = rng.uniform(1000 + 10 * a + b, -0.05, 0.05);
      fm.quad(a, b) += c;
      fm.quad(b, a) += c;
    }
  fm.validate();
  Eigen::VectorXd omega2(2);
  omega2 << std::cos(0.77), std::sin(0.77);
  std::vector<Eigen::VectorXd> probes8;
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd v(8);
    for (int c = 0; c < 8; ++c) v(c) = rng.uniform(5000 + 8 * t + c, -1.0, 1.0);
    probes8.push_back(v);
  }
  for (int j : {0, 3, 6})
    CHECK(intertwining_residual(ms, fm, omega2, 0.5, j, probes8) <= 1e-6);
}

TEST_CASE("mixed norms of gaussians") {
  // separable: ||f||_{L^r_z L^p_v} = ||a||_p ||b||_r
  GaussianTestFunction f = isotropic_gaussian(2, 1, 1.0);
  const double p = 1.5, r = 3.0;
  // a(V) = e^{-|V|^2}: ||a||_p = (pi/p)^{1/p}; b(z) = e^{-z^2}: ||b||_r = (pi/r)^{1/(2r)}
  const double norm_a = std::pow(std::numbers::pi / p, 1.0 / p);
  const double norm_b = std::pow(std::numbers::pi / r, 0.5 / r);
  CHECK(mixed_norm(f, p, r) == doctest::Approx(norm_a * norm_b).epsilon(1e-12));
  // p = r collapses to the plain L^p norm on R^3
  const double p3 = 2.0;
  const double plain = std::pow(std::numbers::pi / p3, 1.5 / p3);
  CHECK(mixed_norm(f, p3, p3) == doctest::Approx(plain).epsilon(1e-12));
  // sup norms
  CHECK(mixed_norm(f, std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));
}

TEST_CASE("grid mixed norm on the unit box and monotonicity") {
  // indicator of [0,1)^3 sampled on an aligned grid has mixed norm 1 for all p, r
  twisted::GridSpec vg{1, 4.0, 64};  // h = 0.125
  twisted::VZField f = twisted::zero_vzfield(vg, 64, 4.0);
  const int nz = f.z_points;
  for (int i1 = 0; i1 < 64; ++i1)
    for (int i2 = 0; i2 < 64; ++i2)
      for (int iz = 0; iz < nz; ++iz) {
        const bool in = vg.coord(i1) >= 0 && vg.coord(i1) < 1.0 && vg.coord(i2) >= 0 &&
                       vg.coord(i2) < 1.0 && f.z_coord(iz) >= 0 && f.z_coord(iz) < 1.0;
        if (in)
          f.values[(static_cast<std::size_t>(i1) * 64 + i2) * nz + iz] = 1.0;
      }
  for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()})
    for (double r : {1.0, 2.5, std::numeric_limits<double>::infinity()})
      CHECK(mixed_norm(f, p, r) == doctest::Approx(1.0).epsilon(1e-12));

  // pointwise dominance implies mixed-norm dominance
  CounterRng rng(77);
  twisted::VZField small = twisted::zero_vzfield(vg, 16, 4.0);
  twisted::VZField big = small;
  for (std::size_t i = 0; i < small.values.size(); ++i) {
    const double m = rng.uniform(2 * i);
    small.values[i] = m * rng.uniform(2 * i + 1);
    big.values[i] = m;
  }
  for (double p : {1.0, 2.0})
    for (double r : {1.0, 4.0}) CHECK(mixed_norm(small, p, r) <= mixed_norm(big, p, r));
}

TEST_CASE("algebra file round trip") {
  StepTwoAlgebra ms = muller_seeger_example();
  const std::string path = "/tmp/metivier_algebra_test.txt";
  save_algebra(ms, path);
  StepTwoAlgebra back = load_algebra(path);
  CHECK(back.half_dim == ms.half_dim);
  CHECK(back.center_dim == ms.center_dim);
  for (int i = 0; i < ms.center_dim; ++i)
    CHECK((back.brackets[i] - ms.brackets[i]).norm() == 0.0);
}
