#pragma once

#include <Eigen/Dense>
#include <complex>

#include "metivier/grid.hpp"
#include "metivier/group.hpp"

namespace metivier::group {

using cplx = std::complex<double>;

// f(V, Z) = amplitude * exp(-x^T Q x + i p.x), x = (V, Z) in R^{2n+d},
// Q positive definite. Closed-form surrogate for Schwartz functions: the
// central Fourier transform, hyperplane integrals and mixed norms all stay
// analytic.
struct GaussianTestFunction {
  int v_dim = 2;
  int z_dim = 1;
  Eigen::MatrixXd quad;    // (v_dim+z_dim)^2, positive definite
  Eigen::VectorXd phase;   // linear phase vector p
  cplx amplitude{1.0, 0.0};

  int dim() const { return v_dim + z_dim; }
  void validate() const;
  cplx operator()(const Eigen::VectorXd& x) const;
};

GaussianTestFunction isotropic_gaussian(int v_dim, int z_dim, double decay);

// R_omega f(V, t) = integral over ker(omega) of f(V, t Z_omega + Z'); the
// Gaussian integral over the (d-1)-plane is evaluated in closed form.
cplx partial_radon(const GaussianTestFunction& f, const Eigen::VectorXd& omega,
                   const Eigen::VectorXd& v, double t);

// Central Fourier transform F(V, eta) = (2pi)^{-d} int f(V, Z) e^{i eta.Z} dZ.
cplx central_fourier(const GaussianTestFunction& f, const Eigen::VectorXd& v,
                     const Eigen::VectorXd& eta);

// Max residual, normalised by max |rhs|, of the intertwining relation
//   F_z(V_j f)(V, lambda omega) = [d/dv_j - (i lambda / 2) omega([V, V_j])]
//                                 F_z f(V, lambda omega)
// over the probe points. The two sides follow different analytic routes:
// the left differentiates f first and pushes a polynomial through the
// z-integral moments; the right differentiates the closed-form transform.
double intertwining_residual(const StepTwoAlgebra& alg, const GaussianTestFunction& f,
                             const Eigen::VectorXd& omega, double lambda, int field_index,
                             const std::vector<Eigen::VectorXd>& probes);

// Mixed norm ||f||_{L^r_z L^p_v} (inner p over v, outer r over z); closed
// form through Schur complements. p or r may be +infinity.
double mixed_norm(const GaussianTestFunction& f, double p_inner, double r_outer);

// Riemann-sum mixed norm of a gridded (v, z) field.
double mixed_norm(const twisted::VZField& f, double p_inner, double r_outer);

}  // namespace metivier::group
