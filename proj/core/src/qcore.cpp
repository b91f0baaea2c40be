#include "entmed/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace entmed {

namespace {

std::vector<std::string> default_labels(size_t n) {
  std::vector<std::string> l;
  for (size_t k = 0; k < n; ++k) l.push_back(std::string(1, static_cast<char>('A' + k)));
  return l;
}

}  // namespace

Space::Space(std::vector<int> d) : Space(d, default_labels(d.size())) {}

Space::Space(std::vector<int> d, std::vector<std::string> l) : dims(std::move(d)), labels(std::move(l)) {
  if (dims.empty()) throw std::invalid_argument("Space: no subsystems");
  if (dims.size() != labels.size()) throw std::invalid_argument("Space: dims and labels differ in length");
  for (int x : dims)
    if (x <= 0) throw std::invalid_argument("Space: subsystem dimension must be positive");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw std::invalid_argument("Space: duplicate subsystem label");
}

int Space::total() const {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

int Space::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw std::invalid_argument("unknown subsystem label '" + label + "'");
  return static_cast<int>(it - labels.begin());
}

bool Space::has(const std::string& label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

std::vector<int> Space::indices_of(const std::vector<std::string>& ls) const {
  std::vector<int> idx;
  for (const auto& l : ls) idx.push_back(index_of(l));
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw std::invalid_argument("repeated subsystem label");
  return idx;
}

Space Space::restricted(const std::vector<int>& keep) const {
  std::vector<int> d;
  std::vector<std::string> l;
  for (int k : keep) {
    d.push_back(dims.at(k));
    l.push_back(labels.at(k));
  }
  return Space(d, l);
}

Space concat(const Space& a, const Space& b) {
  for (const auto& l : b.labels)
    if (a.has(l)) throw std::invalid_argument("tensor: label collision on '" + l + "'");
  auto d = a.dims;
  auto l = a.labels;
  d.insert(d.end(), b.dims.begin(), b.dims.end());
  l.insert(l.end(), b.labels.begin(), b.labels.end());
  return Space(d, l);
}

Ket::Ket(Space space, CVec amplitudes) : space_(std::move(space)), amp_(std::move(amplitudes)) {
  if (amp_.size() != space_.total()) throw std::invalid_argument("Ket: amplitude length does not match dims");
  if (std::abs(amp_.norm() - 1.0) > kKetNormTol) throw std::invalid_argument("Ket: not unit norm");
}

Ket Ket::basis(Space space, const std::vector<int>& digits) {
  if (static_cast<int>(digits.size()) != space.size()) throw std::invalid_argument("Ket::basis: wrong digit count");
  int idx = 0;
  for (int k = 0; k < space.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= space.dims[k]) throw std::invalid_argument("Ket::basis: digit out of range");
    idx = idx * space.dims[k] + digits[k];
  }
  CVec v = CVec::Zero(space.total());
  v[idx] = 1.0;
  return Ket(std::move(space), v);
}

Ket Ket::normalized(Space space, CVec amplitudes) {
  double n = amplitudes.norm();
  if (n == 0.0) throw std::invalid_argument("Ket::normalized: zero vector");
  return Ket(std::move(space), amplitudes / n);
}

void require_density(const CMat& m, const char* who) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
  if (hermiticity_error(m) > kHermTol) throw std::invalid_argument(std::string(who) + ": matrix not Hermitian");
  if (std::abs(m.trace() - cplx(1.0)) > kTraceTol) throw std::invalid_argument(std::string(who) + ": trace is not 1");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigClip)
    throw std::invalid_argument(std::string(who) + ": matrix has negative eigenvalues");
}

DensityMatrix::DensityMatrix(Space space, CMat data) : space_(std::move(space)), data_(std::move(data)) {
  if (data_.rows() != space_.total()) throw std::invalid_argument("DensityMatrix: size does not match dims");
  require_density(data_, "DensityMatrix");
}

DensityMatrix::DensityMatrix(const Ket& ket)
    : space_(ket.space()), data_(ket.amplitudes() * ket.amplitudes().adjoint()) {}

DensityMatrix DensityMatrix::unchecked(Space space, CMat data) {
  DensityMatrix r;
  r.space_ = std::move(space);
  r.data_ = std::move(data);
  return r;
}

DensityMatrix DensityMatrix::maximally_mixed(Space space) {
  int d = space.total();
  return DensityMatrix(std::move(space), CMat::Identity(d, d) / static_cast<double>(d));
}

HermitianOp::HermitianOp(Space space, CMat data) : space_(std::move(space)), data_(std::move(data)) {
  if (data_.rows() != space_.total() || data_.cols() != space_.total())
    throw std::invalid_argument("HermitianOp: size does not match dims");
  if (hermiticity_error(data_) > kHermTol) throw std::invalid_argument("HermitianOp: not Hermitian");
}

HermitianOp HermitianOp::zero(Space space) {
  int d = space.total();
  return HermitianOp(std::move(space), CMat::Zero(d, d));
}

HermitianOp HermitianOp::operator+(const HermitianOp& o) const {
  if (!(space_ == o.space_)) throw std::invalid_argument("HermitianOp: adding operators on different spaces");
  return HermitianOp(space_, data_ + o.data_);
}

HermitianOp HermitianOp::operator*(double s) const { return HermitianOp(space_, data_ * s); }

HermitianOp local_op(const Space& space, const std::string& label, const CMat& local) {
  return HermitianOp(space, embed(space.dims, space.index_of(label), local));
}

Ket tensor(const Ket& a, const Ket& b) {
  return Ket(concat(a.space(), b.space()), kron(a.amplitudes(), b.amplitudes()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::unchecked(concat(a.space(), b.space()), kron(a.data(), b.data()));
}

HermitianOp tensor(const HermitianOp& a, const HermitianOp& b) {
  return HermitianOp(concat(a.space(), b.space()), kron(a.data(), b.data()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  auto idx = rho.space().indices_of(keep);
  return DensityMatrix::unchecked(rho.space().restricted(idx), partial_trace_raw(rho.data(), rho.dims(), idx));
}

CMat partial_transpose(const DensityMatrix& rho, const std::vector<std::string>& party) {
  return partial_transpose_raw(rho.data(), rho.dims(), rho.space().indices_of(party));
}

double von_neumann_entropy(const CMat& rho) {
  RVec p = clipped_eigenvalues(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s -= p[i] * std::log2(p[i]);
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.data()); }

double purity(const DensityMatrix& rho) { return (rho.data() * rho.data()).trace().real(); }

double fidelity(const CMat& rho, const CMat& sigma) {
  if (rho.rows() != sigma.rows()) throw std::invalid_argument("fidelity: dimension mismatch");
  for (const CMat* m : {&rho, &sigma}) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(*m), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kEigClip) throw std::invalid_argument("fidelity: input is not PSD");
  }
  // drop round-off eigenvalues of a rank-deficient rho
  CMat sr = hermitian_function(rho, [](double x) { return x > 1e-14 ? std::sqrt(x) : 0.0; });
  RVec ev = clipped_eigenvalues(sr * sigma * sr);
  double f = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > 1e-15) f += std::sqrt(ev[i]);
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.space().total() != sigma.space().total()) throw std::invalid_argument("fidelity: dimension mismatch");
  return fidelity(rho.data(), sigma.data());
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.space().total() != sigma.space().total()) throw std::invalid_argument("trace_distance: dimension mismatch");
  return std::clamp(0.5 * trace_norm_hermitian(rho.data() - sigma.data()), 0.0, 1.0);
}

double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma) { return std::acos(fidelity(rho, sigma)); }

}  // namespace entmed
