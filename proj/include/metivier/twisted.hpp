#pragma once

#include "metivier/grid.hpp"

namespace metivier::twisted {

// phi_k^lambda sampled on the grid (lambda > 0).
SampledField sample_special_hermite(const GridSpec& grid, int degree, double lambda);

// (f x_lambda g)(z) = sum_w f(z-w) g(w) e^{i lambda Im(conj(z).w)/2} h^{2n},
// zero-extending f(z-w) outside the grid. The twist sign is the one under
// which g x_lambda phi_k^{|lambda|} lands in the (2k+n)lambda eigenspace of
// L^lambda. Gridded path is n = 1 only.
SampledField twisted_convolve(const SampledField& f, const SampledField& g,
                              double lambda);

// Lambda_k^lambda f = f x_lambda phi_k^{|lambda|}; lambda must be nonzero.
SampledField project(const SampledField& f, int degree, double lambda);

struct LaplacianResult {
  SampledField field;
  bool boundary_decay_ok = true;  // boundary max <= 1e-8 * field max
  double boundary_ratio = 0;
};

// Second-order central differences for
//   L^lambda = -sum d^2/dy_j^2 + (lambda^2/4)|y|^2
//              + i lambda sum_j (y_j d_{y_{j+n}} - y_{j+n} d_{y_j}).
LaplacianResult twisted_laplacian(const SampledField& f, double lambda);

// delta_s f(.) = f(s .), realised by reinterpreting the grid metadata
// (half_width /= s); sample values are untouched, so the dilation is exact.
SampledField dilate(const SampledField& f, double scale);

// Relative L2 gap between Lambda_k^lambda g and
// lambda^{-n} delta_{sqrt(lambda)} Lambda_k^1 delta_{1/sqrt(lambda)} g.
double dilation_residual(const SampledField& g, int degree, double lambda);

// (2pi)^{-n} lambda^n sum_{k<=cutoff} Lambda_k^lambda f.
SampledField reconstruct(const SampledField& f, double lambda, int cutoff);

}  // namespace metivier::twisted
