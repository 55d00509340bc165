#pragma once

#include <string>
#include <utility>
#include <vector>

#include "metivier/calculus.hpp"

namespace metivier::bounds {

// Piecewise exponent function on [0, 1/2]:
//   phi(s) = -s/2 for s <= s*,  n s - 1/2 for s >= s*,  s* = 1/(2n+1).
double phi(double s, int n);

struct ExponentParams {
  double alpha = 1, beta = 1, gamma = 1;
  double p = 1;    // [1, 2]
  double q = 2;    // [2, inf]
  double r = 1;    // [1, 2(d+1)/(d+3)]
  int n = 1;
  int d = 1;

  double r_conj() const;  // r' (inf at r = 1)
  double bracket() const; // n(1/p - 1/q) + d(1/r - 1/r')
  bool excluded_endpoint() const { return d == 1 && p == 2 && q == 2; }
  void validate() const;
};

struct ExponentSet {
  double A = 0, B = 0, C = 0, D = 0;
  double nu = 0;   // phi(1/p-1/2) + phi(1/2-1/q) - bracket
  double nu1 = 0;  // phi(1/p-1/2) + phi(1/2-1/q)
  double s_star = 0, p_star = 0;
};

ExponentSet exponents(const ExponentParams& params);

enum class NuCase { a, b, c, d };
struct NuAnalysis {
  NuCase label = NuCase::a;
  double nu = 0;
};
// Classification against the knee p* = 2(2n+1)/(2n+3): nu < -1 everywhere
// admissible except (d, r, p, q) = (1, 1, 2, 2), where nu = -1.
NuAnalysis nu_analysis(double p, double q, double r, int n, int d);

struct SeriesPoint {
  double mu = 0;
  double value = 0;          // truncated sum + tail estimate
  double tail_fraction = 0;  // tail / value
  int terms = 0;             // number of summed modes
};

// sum_k |mu_k'| mu_k^{bracket - 1} (2k+n)^{nu1} with exact roots; the tail
// beyond the cutoff is controlled by the power decay (2k+n)^{nu} forced by
// the mu_k bound, and the cutoff grows until tail_fraction < 1e-4.
SeriesPoint series_bound(const calculus::CalculusSpec& spec, double mu,
                         const ExponentParams& params, int initial_cutoff = 64);

struct Prediction {
  char letter = 'A';
  double exponent = 0;
  bool in_one_minus_mu = false;  // growth read against |1-mu| instead of mu
  std::string regime;
};

// The governing table row for C_mu^m at this mu.
Prediction predicted_exponent(const calculus::CalculusSpec& spec,
                              const ExponentParams& params, double mu);

struct LogLogFit {
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;  // max |log y - fit| over the points
};

LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points);

// Sampled bound curve (CSV-facing): one evaluated series point per mu plus
// the prediction that should govern it.
struct BoundCurvePoint {
  double mu = 0;
  double value = 0;
  double tail_fraction = 0;
  char regime = 'A';
  double predicted_exponent = 0;
};

std::vector<BoundCurvePoint> bound_curve(const calculus::CalculusSpec& spec,
                                         const ExponentParams& params,
                                         const std::vector<double>& mus);

}  // namespace metivier::bounds
