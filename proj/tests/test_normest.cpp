#include "metivier/normest.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "metivier/rng.hpp"
#include "metivier/specfun.hpp"

using namespace metivier;
using namespace metivier::normest;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// rank-one kernel a(z) conj(b(w)) on an abstract weighted index set
DiscreteOperator rank_one(const std::vector<cplx>& a, const std::vector<cplx>& b,
                          double weight) {
  DiscreteOperator op;
  op.size = a.size();
  op.weight = weight;
  op.kernel = [a, b](std::size_t z, std::size_t w) { return a[z] * std::conj(b[w]); };
  op.apply = [a, b, weight](const std::vector<cplx>& g) {
    cplx s{0, 0};
    for (std::size_t w = 0; w < g.size(); ++w) s += std::conj(b[w]) * g[w];
    s *= weight;
    std::vector<cplx> out(a.size());
    for (std::size_t z = 0; z < a.size(); ++z) out[z] = a[z] * s;
    return out;
  };
  op.apply_adjoint = [a, b, weight](const std::vector<cplx>& g) {
    cplx s{0, 0};
    for (std::size_t z = 0; z < g.size(); ++z) s += std::conj(a[z]) * g[z];
    s *= weight;
    std::vector<cplx> out(b.size());
    for (std::size_t w = 0; w < b.size(); ++w) out[w] = b[w] * s;
    return out;
  };
  return op;
}

DiscreteOperator identity_op(std::size_t size) {
  DiscreteOperator op;
  op.size = size;
  op.weight = 1.0;
  op.apply = [](const std::vector<cplx>& g) { return g; };
  op.apply_adjoint = op.apply;
  op.kernel = [](std::size_t z, std::size_t w) { return z == w ? cplx{1, 0} : cplx{0, 0}; };
  return op;
}

}  // namespace

TEST_CASE("exact L1 -> L2 norms") {
  // zero operator
  DiscreteOperator zero = rank_one(std::vector<cplx>(8, cplx{0, 0}),
                                   std::vector<cplx>(8, cplx{0, 0}), 0.5);
  CHECK(opnorm_1_to_2(zero) == 0.0);

  // rank-one kernel: norm = ||a||_2 max|b|
  CounterRng rng(11);
  std::vector<cplx> a(40), b(40);
  for (std::size_t i = 0; i < 40; ++i) {
    a[i] = cplx{rng.uniform(4 * i) - 0.5, rng.uniform(4 * i + 1) - 0.5};
    b[i] = cplx{rng.uniform(4 * i + 2) - 0.5, rng.uniform(4 * i + 3) - 0.5};
  }
  const double weight = 0.3;
  DiscreteOperator op = rank_one(a, b, weight);
  double a2 = 0, bmax = 0;
  for (const cplx& v : a) a2 += std::norm(v);
  for (const cplx& v : b) bmax = std::max(bmax, std::abs(v));
  CHECK(opnorm_1_to_2(op) ==
        doctest::Approx(std::sqrt(a2 * weight) * bmax).epsilon(1e-12));
}

TEST_CASE("projector column norm matches the quadrature norm") {
  twisted::GridSpec g{1, 8.0, 64};
  for (int k : {0, 2, 5}) {
    DiscreteOperator op = projector_operator(g, k, 1.0);
    const double exact = specfun::special_hermite_l2_norm(k, 1, 1.0);
    CHECK(opnorm_1_to_2(op) == doctest::Approx(exact).epsilon(1e-3));
  }
}

TEST_CASE("power estimates on the identity and the projector") {
  PowerEstimate id = opnorm_power(identity_op(64), 2.0, 2.0, 40, 2, 7);
  CHECK(id.value == doctest::Approx(1.0).epsilon(1e-10));

  twisted::GridSpec g{1, 8.0, 48};
  DiscreteOperator proj = projector_operator(g, 2, 1.0);
  PowerEstimate two = opnorm_power(proj, 2.0, 2.0, 15, 2, 11);
  CHECK(two.value == doctest::Approx(2.0 * std::numbers::pi).epsilon(0.01));

  // p = 1, q = 2 dispatches to the exact column path
  PowerEstimate col = opnorm_power(proj, 1.0, 2.0, 10, 1, 1);
  CHECK(col.method == "column-exact");
  CHECK(col.value == doctest::Approx(opnorm_1_to_2(proj)).epsilon(1e-12));
  CHECK(col.value <= opnorm_1_to_2(proj) + 1e-9);
}

TEST_CASE("boyd iteration is monotone and below the exact paths") {
  twisted::GridSpec g{1, 6.0, 32};
  DiscreteOperator proj = projector_operator(g, 1, 1.0);
  PowerEstimate boyd = opnorm_power(proj, 1.5, 3.0, 40, 3, 5);
  CHECK(boyd.method == "boyd-power");
  REQUIRE(boyd.ratio_history.size() >= 2);
  for (std::size_t i = 1; i < boyd.ratio_history.size(); ++i)
    CHECK(boyd.ratio_history[i] >= boyd.ratio_history[i - 1] * (1.0 - 1e-12));

  // interpolation sanity: below both exact corner norms it interpolates
  const double c12 = opnorm_1_to_2(proj);
  PowerEstimate r1inf = opnorm_power(proj, 1.0, kInf, 10, 1, 1);
  CHECK(boyd.value <= std::max(c12, r1inf.value) * 3.0);
  CHECK(boyd.value > 0.0);
}

TEST_CASE("duality of the estimates") {
  twisted::GridSpec g{1, 6.0, 32};
  DiscreteOperator proj = projector_operator(g, 2, 0.8);
  DiscreteOperator adj = adjoint_operator(proj);
  const double p = 1.2, q = 4.0;
  const double qc = q / (q - 1.0), pc = p / (p - 1.0);
  PowerEstimate direct = opnorm_power(proj, p, q, 25, 3, 3);
  PowerEstimate dual = opnorm_power(adj, qc, pc, 25, 3, 3);
  CHECK(direct.value == doctest::Approx(dual.value).epsilon(0.01));
}

TEST_CASE("k-scaling of the projector norms") {
  // (p, q) = (2, 2): projector, slope 0
  twisted::GridSpec g{1, 8.0, 48};
  std::vector<std::pair<double, double>> pts22, pts12;
  for (int k = 1; k <= 6; ++k) {
    DiscreteOperator proj = projector_operator(g, k, 1.0);
    pts22.emplace_back(2.0 * k + 1.0, opnorm_power(proj, 2.0, 2.0, 12, 2, 13).value);
    pts12.emplace_back(2.0 * k + 1.0, opnorm_1_to_2(proj));
  }
  CHECK(std::abs(scaling_fit(pts22).slope) <= 0.02);
  // (1, 2): slope (n-1)/2 = 0 for n = 1
  CHECK(std::abs(scaling_fit(pts12).slope) <= 0.05);

  // fitted slopes stay below nu1 + 0.1
  const double nu1_22 = 0.0, nu1_12 = 0.0;
  CHECK(scaling_fit(pts22).slope <= nu1_22 + 0.1);
  CHECK(scaling_fit(pts12).slope <= nu1_12 + 0.1);
}

TEST_CASE("lambda-scaling through the exact quadrature norms") {
  // || phi_k^lambda ||_2 = lambda^{-n/2} || phi_k ||_2: slope -1/2 at (1, 2)
  std::vector<std::pair<double, double>> pts;
  for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0})
    pts.emplace_back(lambda, specfun::special_hermite_l2_norm(3, 1, lambda));
  const auto fit = scaling_fit(pts);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.02 / 0.5));
}
