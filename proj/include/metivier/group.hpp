#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace metivier::group {

// Step-two nilpotent Lie algebra g = v + z with dim v = 2n, dim z = d.
// The bracket is encoded by d skew-symmetric matrices:
//   <Z_i, [V, U]> = v^T J^{(i)} u.
struct StepTwoAlgebra {
  int half_dim = 1;    // n
  int center_dim = 1;  // d
  std::vector<Eigen::MatrixXd> brackets;  // J^{(1..d)}, each 2n x 2n skew

  void validate() const;
  // J_omega = sum_i omega_i J^{(i)}
  Eigen::MatrixXd j_omega(const Eigen::VectorXd& omega) const;
};

StepTwoAlgebra heisenberg(int half_dim = 1);

// The 2-step algebra on R^8 + R^2 with E_z = z1 I + z2 S (S the signed
// cyclic shift) and J_z = [[0, E_z], [-E_z^T, 0]]; det J_z = (z1^4 + z2^4)^2,
// so the algebra is Metivier but not of H-type.
StepTwoAlgebra muller_seeger_example();
Eigen::MatrixXd muller_seeger_j(double z1, double z2);

struct SphereScanResult {
  bool verdict = false;
  double margin = 0;  // min |det J_omega| (Metivier) or max defect (H-type)
  Eigen::VectorXd worst_omega;
};

// Quasi-uniform unit directions: {+1,-1} for d = 1, equispaced angles for
// d = 2, deterministic normalised Gaussian samples for d >= 3.
std::vector<Eigen::VectorXd> sphere_samples(int dim, int count);

// Sampling-based checks over the unit sphere in the dual of the center.
SphereScanResult is_metivier(const StepTwoAlgebra& alg, int samples);
SphereScanResult is_htype(const StepTwoAlgebra& alg, int samples);

// A with A^T J A = J0 = [[0, I], [-I, 0]], by symplectic Gram-Schmidt with
// pivoting on the largest-magnitude pairing. Throws on (near-)singular input.
Eigen::MatrixXd symplectic_normalize(const Eigen::MatrixXd& j);
Eigen::MatrixXd standard_symplectic_form(int half_dim);

// Text key-value description: n, d, matrices row-major.
void save_algebra(const StepTwoAlgebra& alg, const std::string& path);
StepTwoAlgebra load_algebra(const std::string& path);

}  // namespace metivier::group
