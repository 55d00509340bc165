#include "metivier/group.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "metivier/rng.hpp"

namespace metivier::group {

void StepTwoAlgebra::validate() const {
  if (half_dim < 1) throw std::invalid_argument("StepTwoAlgebra: half_dim must be >= 1");
  if (center_dim < 1) throw std::invalid_argument("StepTwoAlgebra: center_dim must be >= 1");
  if (brackets.size() != static_cast<std::size_t>(center_dim))
    throw std::invalid_argument("StepTwoAlgebra: need d bracket matrices");
  for (const auto& j : brackets) {
    if (j.rows() != 2 * half_dim || j.cols() != 2 * half_dim)
      throw std::invalid_argument("StepTwoAlgebra: bracket matrix must be 2n x 2n");
    const double scale = j.norm();
    if ((j + j.transpose()).norm() > 1e-12 * std::max(scale, 1.0))
      throw std::invalid_argument("StepTwoAlgebra: bracket matrix is not skew-symmetric");
  }
}

Eigen::MatrixXd StepTwoAlgebra::j_omega(const Eigen::VectorXd& omega) const {
  if (omega.size() != center_dim)
    throw std::invalid_argument("j_omega: direction dimension mismatch");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * half_dim, 2 * half_dim);
  for (int i = 0; i < center_dim; ++i) j += omega[i] * brackets[i];
  return j;
}

StepTwoAlgebra heisenberg(int half_dim) {
  StepTwoAlgebra alg;
  alg.half_dim = half_dim;
  alg.center_dim = 1;
  alg.brackets = {standard_symplectic_form(half_dim)};
  alg.validate();
  return alg;
}

Eigen::MatrixXd standard_symplectic_form(int half_dim) {
  const int n = half_dim;
  Eigen::MatrixXd j0 = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  j0.block(0, n, n, n) = Eigen::MatrixXd::Identity(n, n);
  j0.block(n, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
  return j0;
}

Eigen::MatrixXd muller_seeger_j(double z1, double z2) {
  // E_z = z1 I + z2 S, with S e1 = e2, S e2 = e3, S e3 = e4, S e4 = -e1.
  Eigen::Matrix4d e = z1 * Eigen::Matrix4d::Identity();
  e(1, 0) += z2;
  e(2, 1) += z2;
  e(3, 2) += z2;
  e(0, 3) -= z2;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(8, 8);
  j.block(0, 4, 4, 4) = e;
  j.block(4, 0, 4, 4) = -e.transpose();
  return j;
}

StepTwoAlgebra muller_seeger_example() {
  StepTwoAlgebra alg;
  alg.half_dim = 4;
  alg.center_dim = 2;
  alg.brackets = {muller_seeger_j(1, 0), muller_seeger_j(0, 1)};
  alg.validate();
  return alg;
}

std::vector<Eigen::VectorXd> sphere_samples(int dim, int count) {
  if (dim < 1) throw std::invalid_argument("sphere_samples: dim must be >= 1");
  if (count < 1) throw std::invalid_argument("sphere_samples: count must be >= 1");
  std::vector<Eigen::VectorXd> out;
  if (dim == 1) {
    out.push_back(Eigen::VectorXd::Constant(1, 1.0));
    out.push_back(Eigen::VectorXd::Constant(1, -1.0));
    return out;
  }
  if (dim == 2) {
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
      const double t = 2.0 * std::numbers::pi * i / count;
      Eigen::VectorXd w(2);
      w << std::cos(t), std::sin(t);
      out.push_back(w);
    }
    return out;
  }
  CounterRng rng(0x5ca1ab1eULL + static_cast<std::uint64_t>(dim));
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd w(dim);
    double norm2 = 0;
    for (int c = 0; c < dim; ++c) {
      w[c] = rng.normal(static_cast<std::uint64_t>(i) * dim + c);
      norm2 += w[c] * w[c];
    }
    if (norm2 == 0) w[0] = 1;
    out.push_back(w / w.norm());
  }
  return out;
}

SphereScanResult is_metivier(const StepTwoAlgebra& alg, int samples) {
  alg.validate();
  double max_entry = 0;
  for (const auto& j : alg.brackets) max_entry = std::max(max_entry, j.cwiseAbs().maxCoeff());
  const double threshold = 1e-10 * std::pow(std::max(max_entry, 1e-300), 2 * alg.half_dim);
  SphereScanResult res;
  res.margin = std::numeric_limits<double>::infinity();
  for (const auto& omega : sphere_samples(alg.center_dim, samples)) {
    const double det = std::abs(alg.j_omega(omega).determinant());
    if (det < res.margin) {
      res.margin = det;
      res.worst_omega = omega;
    }
  }
  res.verdict = res.margin > threshold;
  return res;
}

SphereScanResult is_htype(const StepTwoAlgebra& alg, int samples) {
  alg.validate();
  const int m = 2 * alg.half_dim;
  SphereScanResult res;
  res.margin = 0;
  for (const auto& omega : sphere_samples(alg.center_dim, samples)) {
    const Eigen::MatrixXd j = alg.j_omega(omega);
    const double defect = (j.transpose() * j - Eigen::MatrixXd::Identity(m, m)).norm();
    if (defect >= res.margin) {
      res.margin = defect;
      res.worst_omega = omega;
    }
  }
  res.verdict = res.margin <= 1e-10;
  return res;
}

Eigen::MatrixXd symplectic_normalize(const Eigen::MatrixXd& j) {
  const int m = static_cast<int>(j.rows());
  if (j.cols() != m || m % 2 != 0)
    throw std::invalid_argument("symplectic_normalize: matrix must be square of even size");
  if ((j + j.transpose()).norm() > 1e-10 * std::max(j.norm(), 1.0))
    throw std::invalid_argument("symplectic_normalize: matrix must be skew-symmetric");
  const int n = m / 2;

  // Darboux reduction with greedy pivoting: repeatedly pick the remaining
  // candidate pair (x, y) with the largest |x^T J y|, scale it to a
  // symplectic pair, and strip its span from the rest.
  std::vector<Eigen::VectorXd> work;
  for (int c = 0; c < m; ++c) work.push_back(Eigen::VectorXd::Unit(m, c));
  std::vector<Eigen::VectorXd> e_vecs, f_vecs;
  const double scale = j.cwiseAbs().maxCoeff();

  for (int pair = 0; pair < n; ++pair) {
    double best = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t a = 0; a < work.size(); ++a)
      for (std::size_t b = a + 1; b < work.size(); ++b) {
        const double va = std::abs(work[a].dot(j * work[b])) /
                          (work[a].norm() * work[b].norm());
        if (va > best) {
          best = va;
          bi = a;
          bj = b;
        }
      }
    if (best <= 1e-10 * std::max(scale, 1e-300))
      throw std::runtime_error("symplectic_normalize: numerically singular pairing");
    Eigen::VectorXd x = work[bi], y = work[bj];
    const double pairing = x.dot(j * y);
    const double root = std::sqrt(std::abs(pairing));
    Eigen::VectorXd e = x / root;
    Eigen::VectorXd f = (pairing > 0 ? 1.0 : -1.0) * y / root;
    // remove the chosen pair, then strip the symplectic span of (e, f)
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(bj));
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(bi));
    for (auto& w : work) {
      const double wf = w.dot(j * f);
      const double we = w.dot(j * e);
      w = w - wf * e + we * f;
    }
    e_vecs.push_back(std::move(e));
    f_vecs.push_back(std::move(f));
  }

  Eigen::MatrixXd a(m, m);
  for (int c = 0; c < n; ++c) {
    a.col(c) = e_vecs[c];
    a.col(n + c) = f_vecs[c];
  }
  return a;
}

void save_algebra(const StepTwoAlgebra& alg, const std::string& path) {
  alg.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_algebra: cannot open " + path);
  out << "n = " << alg.half_dim << "\n";
  out << "d = " << alg.center_dim << "\n";
  out.precision(17);
  for (int i = 0; i < alg.center_dim; ++i) {
    out << "J" << (i + 1) << " =";
    const auto& j = alg.brackets[i];
    for (int r = 0; r < j.rows(); ++r)
      for (int c = 0; c < j.cols(); ++c) out << ' ' << j(r, c);
    out << "\n";
  }
}

StepTwoAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_algebra: cannot open " + path);
  StepTwoAlgebra alg;
  alg.half_dim = 0;
  alg.center_dim = 0;
  std::vector<std::pair<int, std::string>> matrix_lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("load_algebra: malformed line: " + line);
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    const std::string val = line.substr(eq + 1);
    if (key == "n")
      alg.half_dim = std::stoi(val);
    else if (key == "d")
      alg.center_dim = std::stoi(val);
    else if (key.size() > 1 && key[0] == 'J')
      matrix_lines.emplace_back(std::stoi(key.substr(1)), val);
    else
      throw std::runtime_error("load_algebra: unknown key: " + key);
  }
  if (alg.half_dim < 1 || alg.center_dim < 1)
    throw std::runtime_error("load_algebra: n and d must be given first");
  alg.brackets.assign(alg.center_dim,
                      Eigen::MatrixXd::Zero(2 * alg.half_dim, 2 * alg.half_dim));
  std::vector<bool> seen(alg.center_dim, false);
  const int m = 2 * alg.half_dim;
  for (auto& [idx, text] : matrix_lines) {
    if (idx < 1 || idx > alg.center_dim)
      throw std::runtime_error("load_algebra: matrix index out of range");
    std::istringstream vs(text);
    Eigen::MatrixXd& j = alg.brackets[idx - 1];
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        if (!(vs >> j(r, c)))
          throw std::runtime_error("load_algebra: matrix entries truncated");
    double extra;
    if (vs >> extra) throw std::runtime_error("load_algebra: trailing matrix entries");
    seen[idx - 1] = true;
  }
  for (bool s : seen)
    if (!s) throw std::runtime_error("load_algebra: missing bracket matrix");
  alg.validate();
  return alg;
}

}  // namespace metivier::group
