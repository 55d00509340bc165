#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "metivier/bounds.hpp"
#include "metivier/grid.hpp"

namespace metivier::normest {

using twisted::cplx;

// Discretised integral operator on grid functions. Norms are quadrature
// norms: ||g||_p = (sum |g_w|^p weight)^{1/p}. The kernel callable is
// optional; the exact L^1 / L^inf paths need it.
struct DiscreteOperator {
  std::size_t size = 0;
  double weight = 1.0;
  std::function<std::vector<cplx>(const std::vector<cplx>&)> apply;
  std::function<std::vector<cplx>(const std::vector<cplx>&)> apply_adjoint;
  std::function<cplx(std::size_t, std::size_t)> kernel;  // may be empty

  bool has_kernel() const { return static_cast<bool>(kernel); }
};

// Lambda_k^lambda as a discrete operator (fast apply plus kernel access);
// the kernel is Hermitian, so the adjoint reuses the apply.
DiscreteOperator projector_operator(const twisted::GridSpec& grid, int degree,
                                    double lambda);

DiscreteOperator adjoint_operator(const DiscreteOperator& op);

double weighted_lp_norm(const std::vector<cplx>& v, double p, double weight);

// Exact discrete L^1 -> L^2 norm: max over source points of the weighted
// L^2 norm of the kernel column.
double opnorm_1_to_2(const DiscreteOperator& op);

struct PowerEstimate {
  double value = 0;
  bool converged = false;
  int iterations = 0;
  std::string method;
  std::vector<double> ratio_history;
};

// L^p -> L^q operator norm, 1 <= p <= 2 <= q <= inf. Exact column/row
// evaluation at p = 1 or q = inf (kernel required), singular-value power
// iteration at (2, 2), and the nonlinear power method with dual-exponent
// renormalisation for intermediate exponents. Estimates are lower bounds
// up to the exact paths.
PowerEstimate opnorm_power(const DiscreteOperator& op, double p, double q,
                           int iterations = 60, int restarts = 8,
                           std::uint64_t seed = 1);

// Log-log slope of norm estimates against the abscissa (2k+n or lambda).
bounds::LogLogFit scaling_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace metivier::normest
