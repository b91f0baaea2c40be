#include "entmed/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace entmed {

CovarianceMatrix::CovarianceMatrix(RMat v, RVec means) : v_(std::move(v)), means_(std::move(means)) {
  if (v_.rows() != v_.cols() || v_.rows() % 2 != 0 || v_.rows() == 0)
    throw std::invalid_argument("CovarianceMatrix: need a non-empty even square matrix");
  if (means_.size() == 0) means_ = RVec::Zero(v_.rows());
  if (means_.size() != v_.rows()) throw std::invalid_argument("CovarianceMatrix: mean vector has wrong length");
  if ((v_ - v_.transpose()).cwiseAbs().maxCoeff() > kCmSymTol)
    throw std::invalid_argument("CovarianceMatrix: matrix not symmetric");
  if (!is_physical(v_)) throw std::invalid_argument("CovarianceMatrix: symplectic eigenvalue below 1/2");
}

CovarianceMatrix CovarianceMatrix::unchecked(RMat v, RVec means) {
  CovarianceMatrix c;
  c.v_ = std::move(v);
  c.means_ = means.size() ? std::move(means) : RVec::Zero(c.v_.rows());
  return c;
}

RMat symplectic_form(int n) {
  RMat om = RMat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    om(2 * k, 2 * k + 1) = 1.0;
    om(2 * k + 1, 2 * k) = -1.0;
  }
  return om;
}

RVec symplectic_eigenvalues(const RMat& v) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0) throw std::invalid_argument("symplectic_eigenvalues: odd dimension");
  const int n = static_cast<int>(v.rows() / 2);
  RMat sym = 0.5 * (v + v.transpose());
  RVec nu(n);
  Eigen::LLT<RMat> llt(sym);
  if (llt.info() == Eigen::Success) {
    RMat L = llt.matrixL();
    RMat m = L.transpose() * symplectic_form(n) * L;
    Eigen::SelfAdjointEigenSolver<RMat> es(m.transpose() * m, Eigen::EigenvaluesOnly);
    RVec a = es.eigenvalues();
    for (int k = 0; k < n; ++k) nu[k] = std::sqrt(std::max(0.0, 0.5 * (a[2 * k] + a[2 * k + 1])));
  } else {
    Eigen::EigenSolver<RMat> es(symplectic_form(n) * sym, false);
    std::vector<double> mods;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) mods.push_back(std::abs(es.eigenvalues()[i]));
    std::sort(mods.begin(), mods.end());
    for (int k = 0; k < n; ++k) nu[k] = 0.5 * (mods[2 * k] + mods[2 * k + 1]);
  }
  std::sort(nu.data(), nu.data() + n);
  return nu;
}

bool is_physical(const RMat& v, double tol) { return symplectic_eigenvalues(v).minCoeff() >= 0.5 - tol; }

CovarianceMatrix state_cm(GaussianKind kind, double nbar, double s, double theta) {
  if (nbar < 0.0) throw std::invalid_argument("state_cm: negative occupation");
  if (theta != 0.0) throw std::invalid_argument("state_cm: only theta = 0 squeezing is supported");
  RMat v = RMat::Identity(2, 2);
  switch (kind) {
    case GaussianKind::coherent:
      v *= 0.5;
      break;
    case GaussianKind::thermal:
      v *= (2.0 * nbar + 1.0) / 2.0;
      break;
    case GaussianKind::squeezed_thermal:
      v(0, 0) = std::exp(2.0 * s);
      v(1, 1) = std::exp(-2.0 * s);
      v *= (2.0 * nbar + 1.0) / 2.0;
      break;
  }
  return CovarianceMatrix(v);
}

CovarianceMatrix direct_sum(const std::vector<CovarianceMatrix>& parts) {
  int dim = 0;
  for (const auto& p : parts) dim += static_cast<int>(p.V().rows());
  RMat v = RMat::Zero(dim, dim);
  RVec m(dim);
  int off = 0;
  for (const auto& p : parts) {
    const auto d = p.V().rows();
    v.block(off, off, d, d) = p.V();
    m.segment(off, d) = p.means();
    off += static_cast<int>(d);
  }
  return CovarianceMatrix(v, m);
}

CovarianceMatrix two_mode_squeezed_vacuum(double s) {
  const double c = std::cosh(2.0 * s) / 2.0, sh = std::sinh(2.0 * s) / 2.0;
  RMat v = RMat::Zero(4, 4);
  v.diagonal().setConstant(c);
  v(0, 2) = v(2, 0) = sh;
  v(1, 3) = v(3, 1) = -sh;
  return CovarianceMatrix(v);
}

RMat select_modes(const RMat& v, const std::vector<int>& modes) {
  const int n = static_cast<int>(v.rows() / 2);
  RMat out(2 * modes.size(), 2 * modes.size());
  for (size_t i = 0; i < modes.size(); ++i)
    for (size_t j = 0; j < modes.size(); ++j) {
      if (modes[i] < 0 || modes[i] >= n || modes[j] < 0 || modes[j] >= n)
        throw std::invalid_argument("select_modes: mode index out of range");
      out.block<2, 2>(2 * i, 2 * j) = v.block<2, 2>(2 * modes[i], 2 * modes[j]);
    }
  return out;
}

RMat partial_transpose_cm(const RMat& v, const std::vector<int>& modes) {
  RMat out = v;
  for (int m : modes) {
    out.row(2 * m + 1) *= -1.0;
    out.col(2 * m + 1) *= -1.0;
  }
  return out;
}

double min_pt_symplectic_eigenvalue(const RMat& v, const std::vector<int>& left, const std::vector<int>& right) {
  if (left.empty() || right.empty()) throw std::invalid_argument("log_negativity_cv: empty side");
  std::vector<int> modes = left;
  modes.insert(modes.end(), right.begin(), right.end());
  std::vector<int> sorted = modes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("log_negativity_cv: mode listed twice");
  RMat sub = select_modes(v, modes);
  std::vector<int> flip;
  for (size_t k = left.size(); k < modes.size(); ++k) flip.push_back(static_cast<int>(k));
  return symplectic_eigenvalues(partial_transpose_cm(sub, flip)).minCoeff();
}

double log_negativity_cv(const RMat& v, const std::vector<int>& left, const std::vector<int>& right) {
  return std::max(0.0, -std::log2(2.0 * min_pt_symplectic_eigenvalue(v, left, right)));
}

double min_pt_symplectic_two_mode(const RMat& v4) {
  if (v4.rows() != 4 || v4.cols() != 4) throw std::invalid_argument("two-mode formula needs a 4x4 CM");
  const double da = v4.block<2, 2>(0, 0).determinant();
  const double db = v4.block<2, 2>(2, 2).determinant();
  const double dc = v4.block<2, 2>(0, 2).determinant();
  const double dv = v4.determinant();
  const double sig = da + db - 2.0 * dc;
  const double disc = std::max(0.0, sig * sig - 4.0 * dv);
  const double denom = sig + std::sqrt(disc);
  return denom > 0.0 ? std::sqrt(2.0 * dv / denom) : 0.0;
}

double log_negativity_two_mode(const RMat& v4) {
  return std::max(0.0, -std::log2(2.0 * min_pt_symplectic_two_mode(v4)));
}

double gaussian_entropy(const RMat& v) {
  RVec nu = symplectic_eigenvalues(v);
  double s = 0.0;
  for (Eigen::Index k = 0; k < nu.size(); ++k) {
    double p = nu[k] + 0.5, m = nu[k] - 0.5;
    if (m > 1e-12) s += p * std::log2(p) - m * std::log2(m);
    else if (p > 0.0) s += p * std::log2(p);
  }
  return std::max(0.0, s);
}

RMat random_symplectic(int n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  RMat h(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) h(i, j) = normal(rng);
  h = 0.5 * (h + h.transpose()).eval();
  return expm(RMat(symplectic_form(n) * h));
}

RMat random_physical_cm(int n, std::mt19937_64& rng, double max_excess) {
  std::uniform_real_distribution<double> unif(0.0, max_excess);
  RVec d(2 * n);
  for (int k = 0; k < n; ++k) d[2 * k] = d[2 * k + 1] = 0.5 + unif(rng);
  RMat s = random_symplectic(n, rng);
  RMat v = s * d.asDiagonal() * s.transpose();
  return 0.5 * (v + v.transpose());
}

}  // namespace entmed
