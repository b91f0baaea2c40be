#include "entmed/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace entmed {

HermitianEig hermitian_eig(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m));
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

RVec clipped_eigenvalues(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m), Eigen::EigenvaluesOnly);
  RVec v = es.eigenvalues();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] < 0.0 && v[i] >= -kEigClip) v[i] = 0.0;
  return v;
}

CMat hermitian_function(const CMat& m, const std::function<double(double)>& f) {
  auto e = hermitian_eig(m);
  RVec fv(e.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv[i] = f(e.values[i]);
  return e.vectors * fv.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

CMat sqrtm_psd(const CMat& m) {
  return hermitian_function(m, [](double x) {
    if (x < -kEigClip) throw std::invalid_argument("sqrtm_psd: matrix is not positive semidefinite");
    return x > 0.0 ? std::sqrt(x) : 0.0;
  });
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVec kron(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

RMat kron(const RMat& a, const RMat& b) {
  RMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat expm(const CMat& m) { return m.exp(); }
RMat expm(const RMat& m) { return m.exp(); }

namespace {

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

std::vector<int> digits_of(int index, const std::vector<int>& dims) {
  std::vector<int> dig(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    dig[k] = index % dims[k];
    index /= dims[k];
  }
  return dig;
}

}  // namespace

CMat partial_trace_raw(const CMat& m, const std::vector<int>& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  const int total = product(dims);
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("partial_trace: matrix size does not match dims");
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: subsystem index out of range");
    kept[k] = true;
  }
  std::vector<int> kd, td, kpos, tpos;
  for (int k = 0; k < n; ++k) {
    if (kept[k]) {
      kd.push_back(dims[k]);
      kpos.push_back(k);
    } else {
      td.push_back(dims[k]);
      tpos.push_back(k);
    }
  }
  const int dk = product(kd), dt = product(td);
  std::vector<int> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];
  std::vector<int> koff(dk), toff(dt);
  for (int r = 0; r < dk; ++r) {
    auto dig = digits_of(r, kd);
    int off = 0;
    for (size_t q = 0; q < dig.size(); ++q) off += dig[q] * stride[kpos[q]];
    koff[r] = off;
  }
  for (int s = 0; s < dt; ++s) {
    auto dig = digits_of(s, td);
    int off = 0;
    for (size_t q = 0; q < dig.size(); ++q) off += dig[q] * stride[tpos[q]];
    toff[s] = off;
  }
  CMat out = CMat::Zero(dk, dk);
  for (int r1 = 0; r1 < dk; ++r1)
    for (int r2 = 0; r2 < dk; ++r2) {
      cplx acc = 0.0;
      for (int s = 0; s < dt; ++s) acc += m(koff[r1] + toff[s], koff[r2] + toff[s]);
      out(r1, r2) = acc;
    }
  return out;
}

CMat partial_transpose_raw(const CMat& m, const std::vector<int>& dims, const std::vector<int>& which) {
  const int n = static_cast<int>(dims.size());
  const int total = product(dims);
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("partial_transpose: matrix size does not match dims");
  std::vector<bool> flip(n, false);
  for (int k : which) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_transpose: subsystem index out of range");
    flip[k] = true;
  }
  std::vector<int> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];
  std::vector<std::vector<int>> dig(total);
  for (int i = 0; i < total; ++i) dig[i] = digits_of(i, dims);
  CMat out(total, total);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j) {
      int ii = 0, jj = 0;
      for (int k = 0; k < n; ++k) {
        int a = dig[i][k], b = dig[j][k];
        if (flip[k]) std::swap(a, b);
        ii += a * stride[k];
        jj += b * stride[k];
      }
      out(ii, jj) = m(i, j);
    }
  return out;
}

CMat permute_subsystems_raw(const CMat& m, const std::vector<int>& dims, const std::vector<int>& order) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("permute_subsystems: bad order length");
  const int total = product(dims);
  std::vector<int> nd(n);
  for (int k = 0; k < n; ++k) nd[k] = dims.at(order[k]);
  std::vector<int> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];
  std::vector<int> map(total);
  for (int i = 0; i < total; ++i) {
    auto dig = digits_of(i, nd);
    int old = 0;
    for (int k = 0; k < n; ++k) old += dig[k] * stride[order[k]];
    map[i] = old;
  }
  CMat out(total, total);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j) out(i, j) = m(map[i], map[j]);
  return out;
}

CMat embed(const std::vector<int>& dims, int site, const CMat& local) {
  if (site < 0 || site >= static_cast<int>(dims.size()))
    throw std::invalid_argument("embed: site out of range");
  if (local.rows() != dims[site] || local.cols() != dims[site])
    throw std::invalid_argument("embed: local operator has wrong dimension");
  int left = 1, right = 1;
  for (int k = 0; k < site; ++k) left *= dims[k];
  for (size_t k = site + 1; k < dims.size(); ++k) right *= dims[k];
  return kron(kron(CMat::Identity(left, left), local), CMat::Identity(right, right));
}

double hermiticity_error(const CMat& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

double trace_norm_hermitian(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

namespace ops {

CMat identity(int d) { return CMat::Identity(d, d); }

CMat sigma_x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMat sigma_y() {
  CMat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

CMat sigma_z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// |1><0|, level 1 is the excited state
CMat sigma_plus() {
  CMat m = CMat::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

CMat sigma_minus() { return sigma_plus().adjoint(); }

CMat annihilation(int n_max) {
  CMat a = CMat::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CMat number(int n_max) {
  CMat m = CMat::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) m(n, n) = n;
  return m;
}

}  // namespace ops

}  // namespace entmed
