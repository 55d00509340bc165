#include "metivier/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace metivier::group {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr double kPi = std::numbers::pi;

MatrixXd require_spd(const MatrixXd& m, const char* who) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(who) + ": not square");
  if ((m - m.transpose()).norm() > 1e-12 * std::max(m.norm(), 1.0))
    throw std::invalid_argument(std::string(who) + ": not symmetric");
  Eigen::LLT<MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument(std::string(who) + ": not positive definite");
  return m;
}

}  // namespace

void GaussianTestFunction::validate() const {
  if (v_dim < 1 || z_dim < 1)
    throw std::invalid_argument("GaussianTestFunction: dims must be >= 1");
  if (quad.rows() != dim() || quad.cols() != dim() || phase.size() != dim())
    throw std::invalid_argument("GaussianTestFunction: shape mismatch");
  require_spd(quad, "GaussianTestFunction");
}

cplx GaussianTestFunction::operator()(const VectorXd& x) const {
  if (x.size() != dim()) throw std::invalid_argument("GaussianTestFunction: bad point");
  const double q = x.dot(quad * x);
  const double ph = phase.dot(x);
  return amplitude * std::exp(cplx{-q, ph});
}

GaussianTestFunction isotropic_gaussian(int v_dim, int z_dim, double decay) {
  GaussianTestFunction f;
  f.v_dim = v_dim;
  f.z_dim = z_dim;
  f.quad = decay * MatrixXd::Identity(v_dim + z_dim, v_dim + z_dim);
  f.phase = VectorXd::Zero(v_dim + z_dim);
  f.validate();
  return f;
}

cplx partial_radon(const GaussianTestFunction& f, const VectorXd& omega,
                   const VectorXd& v, double t) {
  f.validate();
  if (omega.size() != f.z_dim) throw std::invalid_argument("partial_radon: omega dim");
  if (v.size() != f.v_dim) throw std::invalid_argument("partial_radon: v dim");
  if (std::abs(omega.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("partial_radon: omega must be a unit vector");

  const int d = f.z_dim;
  VectorXd x0(f.dim());
  x0.head(f.v_dim) = v;
  x0.tail(d) = t * omega;  // Z_omega is the unit dual vector of omega
  const cplx base = f(x0);
  if (d == 1) return base;

  // orthonormal basis of ker(omega): the trailing columns of a Householder QR
  Eigen::HouseholderQR<MatrixXd> qr(omega);
  MatrixXd q = qr.householderQ();
  MatrixXd basis = q.rightCols(d - 1);

  const MatrixXd qzz = f.quad.bottomRightCorner(d, d);
  const MatrixXd qzv = f.quad.bottomLeftCorner(d, f.v_dim);
  const MatrixXd a = require_spd(basis.transpose() * qzz * basis, "partial_radon");
  VectorXcd b =
      (-2.0 * basis.transpose() * (f.quad.bottomRows(d) * x0)).cast<cplx>() +
      cplx{0, 1} * (basis.transpose() * f.phase.tail(d)).cast<cplx>();
  Eigen::LLT<MatrixXd> llt(a);
  const VectorXcd ainv_b = llt.solve(MatrixXcd(b));
  const double det_a = a.determinant();
  const cplx quad_term = 0.25 * b.transpose() * ainv_b;
  return base * std::sqrt(std::pow(kPi, d - 1) / det_a) * std::exp(quad_term);
}

cplx central_fourier(const GaussianTestFunction& f, const VectorXd& v,
                     const VectorXd& eta) {
  f.validate();
  if (v.size() != f.v_dim || eta.size() != f.z_dim)
    throw std::invalid_argument("central_fourier: dimension mismatch");
  const int d = f.z_dim, nv = f.v_dim;
  const MatrixXd qvv = f.quad.topLeftCorner(nv, nv);
  const MatrixXd qzv = f.quad.bottomLeftCorner(d, nv);
  const MatrixXd qzz = f.quad.bottomRightCorner(d, d);
  VectorXcd b = (-2.0 * qzv * v).cast<cplx>() +
                cplx{0, 1} * (f.phase.tail(d) + eta).cast<cplx>();
  Eigen::LLT<MatrixXd> llt(qzz);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("central_fourier: z-block not positive definite");
  const VectorXcd qinv_b = llt.solve(MatrixXcd(b));
  const cplx quad_term = 0.25 * b.transpose() * qinv_b;
  const cplx vpart = std::exp(cplx{-v.dot(qvv * v), f.phase.head(nv).dot(v)});
  const double det_qzz = qzz.determinant();
  return f.amplitude * std::pow(2.0 * kPi, -d) *
         std::sqrt(std::pow(kPi, d) / det_qzz) * vpart * std::exp(quad_term);
}

double intertwining_residual(const StepTwoAlgebra& alg, const GaussianTestFunction& f,
                             const VectorXd& omega, double lambda, int field_index,
                             const std::vector<VectorXd>& probes) {
  alg.validate();
  f.validate();
  if (f.v_dim != 2 * alg.half_dim || f.z_dim != alg.center_dim)
    throw std::invalid_argument("intertwining_residual: algebra/function shape mismatch");
  if (field_index < 0 || field_index >= f.v_dim)
    throw std::invalid_argument("intertwining_residual: field index out of range");
  if (omega.size() != f.z_dim)
    throw std::invalid_argument("intertwining_residual: omega dimension");

  const int nv = f.v_dim, d = f.z_dim, m = f.dim(), j = field_index;
  const VectorXd eta = lambda * omega;

  // Left side: V~_j f = P(x) f(x) with
  //   P = (-2Qx + ip)_j + (1/2) sum_i (v^T J^(i) e_j) (-2Qx + ip)_{nv+i},
  // a degree-2 complex polynomial pushed through the z-integral moments.
  cplx p_const = cplx{0, f.phase[j]};
  VectorXcd p_lin = (-2.0 * f.quad.row(j).transpose()).cast<cplx>();
  MatrixXcd p_quad = MatrixXcd::Zero(m, m);
  for (int i = 0; i < d; ++i) {
    VectorXd u = VectorXd::Zero(m);
    u.head(nv) = alg.brackets[i].col(j);  // u.x = v^T J^(i) e_j
    const VectorXd w = -2.0 * f.quad.row(nv + i).transpose();
    const cplx kappa{0, f.phase[nv + i]};
    p_quad += 0.25 * (u * w.transpose() + w * u.transpose()).cast<cplx>();
    p_lin += 0.5 * kappa * u.cast<cplx>();
  }

  const MatrixXd qzz = f.quad.bottomRightCorner(d, d);
  const MatrixXd qzv = f.quad.bottomLeftCorner(d, f.v_dim);
  Eigen::LLT<MatrixXd> llt(qzz);
  const MatrixXd qzz_inv = llt.solve(MatrixXd::Identity(d, d));
  const MatrixXcd quad_zz = p_quad.bottomRightCorner(d, d);
  const cplx trace_term = 0.5 * (quad_zz * qzz_inv.cast<cplx>()).trace();

  double max_diff = 0, max_rhs = 0;
  for (const VectorXd& v : probes) {
    if (v.size() != nv) throw std::invalid_argument("intertwining_residual: probe dim");
    const cplx f0 = central_fourier(f, v, eta);

    VectorXcd b = (-2.0 * qzv * v).cast<cplx>() +
                  cplx{0, 1} * (f.phase.tail(d) + eta).cast<cplx>();
    const VectorXcd shift = 0.5 * (qzz_inv.cast<cplx>() * b);

    const VectorXcd vc = v.cast<cplx>();
    // bilinear (not sesquilinear) contractions throughout
    const cplx val =
        p_const + (p_lin.head(nv).transpose() * vc).value() +
          (p_lin.tail(d).transpose() * shift).value() +
          (vc.transpose() * p_quad.topLeftCorner(nv, nv) * vc).value() +
          2.0 * (vc.transpose() * p_quad.topRightCorner(nv, d) * shift).value() +
          (shift.transpose() * quad_zz * shift).value() + trace_term;
    const cplx lhs = f0 * val;

    // Right side: twisted field applied to the closed-form transform.
    const MatrixXd qvv = f.quad.topLeftCorner(nv, nv);
    VectorXcd db = (-2.0 * qzv.col(j)).cast<cplx>();
    const cplx dlog = cplx{-2.0 * (qvv * v)(j), f.phase[j]} +
                      0.5 * (db.transpose() * (qzz_inv.cast<cplx>() * b)).value();
    double bracket = 0;  // omega([V, V_j]) = sum_i omega_i v^T J^(i) e_j
    for (int i = 0; i < d; ++i) bracket += omega[i] * v.dot(alg.brackets[i].col(j));
    const cplx rhs = (dlog - cplx{0, 0.5 * lambda} * bracket) * f0;

    max_diff = std::max(max_diff, std::abs(lhs - rhs));
    max_rhs = std::max(max_rhs, std::abs(rhs));
  }
  return max_rhs > 0 ? max_diff / max_rhs : max_diff;
}

double mixed_norm(const GaussianTestFunction& f, double p_inner, double r_outer) {
  f.validate();
  if (!(p_inner >= 1) || !(r_outer >= 1))
    throw std::domain_error("mixed_norm: exponents must be >= 1 (or inf)");
  const int nv = f.v_dim, d = f.z_dim;
  const MatrixXd qvv = f.quad.topLeftCorner(nv, nv);
  const MatrixXd qvz = f.quad.topRightCorner(nv, d);
  const MatrixXd qzz = f.quad.bottomRightCorner(d, d);
  Eigen::LLT<MatrixXd> llt(qvv);
  const MatrixXd schur = qzz - qvz.transpose() * llt.solve(qvz);

  double pref = std::abs(f.amplitude);
  if (std::isfinite(p_inner))
    pref *= std::pow(std::pow(kPi, nv) / (p_inner * qvv).determinant(),
                     0.5 / p_inner);
  if (std::isfinite(r_outer))
    return pref * std::pow(std::pow(kPi, d) / (r_outer * schur).determinant(),
                           0.5 / r_outer);
  return pref;  // outer sup attained at Z = 0
}

double mixed_norm(const twisted::VZField& f, double p_inner, double r_outer) {
  f.validate();
  if (!(p_inner >= 1) || !(r_outer >= 1))
    throw std::domain_error("mixed_norm: exponents must be >= 1 (or inf)");
  const std::size_t nv = f.vgrid.point_count();
  const double wv = f.vgrid.cell_volume(), wz = f.z_spacing();
  double outer = 0;
  for (int iz = 0; iz < f.z_points; ++iz) {
    double inner;
    if (std::isfinite(p_inner)) {
      double s = 0;
      for (std::size_t iv = 0; iv < nv; ++iv)
        s += std::pow(std::abs(f.values[iv * f.z_points + iz]), p_inner);
      inner = std::pow(s * wv, 1.0 / p_inner);
    } else {
      inner = 0;
      for (std::size_t iv = 0; iv < nv; ++iv)
        inner = std::max(inner, std::abs(f.values[iv * f.z_points + iz]));
    }
    if (std::isfinite(r_outer))
      outer += std::pow(inner, r_outer);
    else
      outer = std::max(outer, inner);
  }
  return std::isfinite(r_outer) ? std::pow(outer * wz, 1.0 / r_outer) : outer;
}

}  // namespace metivier::group
