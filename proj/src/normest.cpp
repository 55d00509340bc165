#include "metivier/normest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "metivier/parallel.hpp"
#include "metivier/rng.hpp"
#include "metivier/specfun.hpp"
#include "metivier/twisted.hpp"

namespace metivier::normest {

DiscreteOperator projector_operator(const twisted::GridSpec& grid, int degree,
                                    double lambda) {
  grid.validate();
  if (grid.half_dim != 1)
    throw std::invalid_argument("projector_operator: gridded path is n = 1 only");
  if (lambda == 0.0) throw std::domain_error("projector_operator: lambda must be nonzero");
  const int N = grid.points_per_axis;

  DiscreteOperator op;
  op.size = grid.point_count();
  op.weight = grid.cell_volume();
  op.apply = [grid, degree, lambda](const std::vector<cplx>& g) {
    twisted::SampledField f{grid, g};
    return twisted::project(f, degree, lambda).values;
  };
  op.apply_adjoint = op.apply;  // Hermitian kernel
  specfun::HermiteProfile profile{degree, 1, std::abs(lambda)};
  const double h = grid.spacing();
  auto radial = std::make_shared<std::vector<double>>(static_cast<std::size_t>(N) * N);
  for (int d1 = 0; d1 < N; ++d1)
    for (int d2 = 0; d2 < N; ++d2)
      (*radial)[static_cast<std::size_t>(d1) * N + d2] = specfun::special_hermite_radial(
          profile, h * h * (static_cast<double>(d1) * d1 + static_cast<double>(d2) * d2));
  op.kernel = [grid, radial, lambda, N](std::size_t zi, std::size_t wi) {
    const int z1 = static_cast<int>(zi) / N, z2 = static_cast<int>(zi) % N;
    const int w1 = static_cast<int>(wi) / N, w2 = static_cast<int>(wi) % N;
    const double rad =
        (*radial)[static_cast<std::size_t>(std::abs(z1 - w1)) * N + std::abs(z2 - w2)];
    // K(z, w) = phi_k(z - w) e^{i lambda Im(z conj(w)) / 2}
    const double arg =
        0.5 * lambda * (grid.coord(z2) * grid.coord(w1) - grid.coord(z1) * grid.coord(w2));
    return cplx{rad * std::cos(arg), rad * std::sin(arg)};
  };
  return op;
}

DiscreteOperator adjoint_operator(const DiscreteOperator& op) {
  DiscreteOperator out;
  out.size = op.size;
  out.weight = op.weight;
  out.apply = op.apply_adjoint;
  out.apply_adjoint = op.apply;
  if (op.has_kernel()) {
    auto k = op.kernel;
    out.kernel = [k](std::size_t i, std::size_t j) { return std::conj(k(j, i)); };
  }
  return out;
}

double weighted_lp_norm(const std::vector<cplx>& v, double p, double weight) {
  if (std::isinf(p)) {
    double m = 0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
  }
  if (!(p >= 1)) throw std::domain_error("weighted_lp_norm: p must be >= 1 or inf");
  double s = 0;
  for (const cplx& x : v) s += std::pow(std::abs(x), p);
  return std::pow(s * weight, 1.0 / p);
}

namespace {

// max over source points of the weighted L^q norm of the kernel column
double column_norm_max(const DiscreteOperator& op, double q) {
  if (!op.has_kernel())
    throw std::invalid_argument("opnorm: exact path needs kernel access");
  std::vector<double> col(op.size, 0.0);
  parallel_for(0, op.size, [&](std::size_t w) {
    if (std::isinf(q)) {
      double m = 0;
      for (std::size_t z = 0; z < op.size; ++z)
        m = std::max(m, std::abs(op.kernel(z, w)));
      col[w] = m;
    } else {
      double s = 0;
      for (std::size_t z = 0; z < op.size; ++z)
        s += std::pow(std::abs(op.kernel(z, w)), q);
      col[w] = std::pow(s * op.weight, 1.0 / q);
    }
  });
  return *std::max_element(col.begin(), col.end());
}

// max over image points of the weighted L^{p'} norm of the kernel row
double row_norm_max(const DiscreteOperator& op, double p) {
  return column_norm_max(adjoint_operator(op), p == 1.0
                                                   ? std::numeric_limits<double>::infinity()
                                                   : p / (p - 1.0));
}

std::vector<cplx> random_start(std::size_t size, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<cplx> v(size);
  for (std::size_t i = 0; i < size; ++i)
    v[i] = cplx{rng.uniform(2 * i) - 0.5, rng.uniform(2 * i + 1) - 0.5};
  return v;
}

// duality map: u -> |u|^{s-1} sgn(u), the norming element of L^s
std::vector<cplx> duality_map(const std::vector<cplx>& v, double s) {
  std::vector<cplx> out(v.size(), cplx{0, 0});
  if (std::isinf(s)) {
    std::size_t arg = 0;
    double best = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (std::abs(v[i]) > best) {
        best = std::abs(v[i]);
        arg = i;
      }
    if (best > 0) out[arg] = v[arg] / best;
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > 0) out[i] = std::pow(a, s - 1.0) * (v[i] / a);
  }
  return out;
}

void scale_to_unit(std::vector<cplx>& v, double p, double weight) {
  const double n = weighted_lp_norm(v, p, weight);
  if (n == 0) throw std::runtime_error("opnorm_power: zero iterate");
  for (cplx& x : v) x /= n;
}

}  // namespace

double opnorm_1_to_2(const DiscreteOperator& op) { return column_norm_max(op, 2.0); }

PowerEstimate opnorm_power(const DiscreteOperator& op, double p, double q,
                           int iterations, int restarts, std::uint64_t seed) {
  if (!(p >= 1 && p <= 2) || !(q >= 2))
    throw std::domain_error("opnorm_power: need 1 <= p <= 2 <= q <= inf");
  PowerEstimate best;

  if (p == 1.0 && op.has_kernel()) {
    best.value = column_norm_max(op, q);
    best.converged = true;
    best.method = "column-exact";
    return best;
  }
  if (std::isinf(q) && op.has_kernel()) {
    best.value = row_norm_max(op, p);
    best.converged = true;
    best.method = "row-exact";
    return best;
  }

  const bool hilbert = (p == 2.0 && q == 2.0);
  best.method = hilbert ? "singular-iteration" : "boyd-power";
  const double p_conj = p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);

  for (int r = 0; r < restarts; ++r) {
    std::vector<cplx> u = random_start(op.size, seed + 0x9e37ULL * r);
    scale_to_unit(u, p, op.weight);
    double prev = 0;
    std::vector<double> history;
    bool converged = false;
    for (int it = 0; it < iterations; ++it) {
      std::vector<cplx> v = op.apply(u);
      const double ratio = weighted_lp_norm(v, q, op.weight);
      if (it > 0 && ratio <= prev * (1.0 + 1e-9)) {
        // stationary (or no longer ascending): keep the best-so-far bound
        converged = ratio >= prev * (1.0 - 1e-9);
        break;
      }
      prev = ratio;
      history.push_back(ratio);
      std::vector<cplx> vd = duality_map(v, q);
      std::vector<cplx> w = op.apply_adjoint(vd);
      u = duality_map(w, p_conj);
      const double un = weighted_lp_norm(u, p, op.weight);
      if (un == 0) break;
      for (cplx& x : u) x /= un;
    }
    if (prev > best.value) {
      best.value = prev;
      best.iterations = static_cast<int>(history.size());
      best.converged = converged;
      best.ratio_history = std::move(history);
    }
  }
  return best;
}

bounds::LogLogFit scaling_fit(const std::vector<std::pair<double, double>>& points) {
  return bounds::fit_loglog(points);
}

}  // namespace metivier::normest
