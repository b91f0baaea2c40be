#include "entmed/corr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include <gsl/gsl_blas.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "entmed/parallel.hpp"

namespace entmed {

Partition::Partition(std::vector<std::string> l, std::vector<std::string> r, bool asym)
    : left(std::move(l)), right(std::move(r)), asymmetric(asym) {
  if (left.empty() || right.empty()) throw std::invalid_argument("Partition: empty side");
  std::set<std::string> s(left.begin(), left.end());
  for (const auto& x : right)
    if (s.count(x)) throw std::invalid_argument("Partition: sides overlap on '" + x + "'");
}

std::vector<std::string> Partition::all() const {
  auto a = left;
  a.insert(a.end(), right.begin(), right.end());
  return a;
}

void Partition::check(const Space& space) const {
  for (const auto& l : all()) space.index_of(l);
}

std::string Partition::name() const {
  std::string s;
  for (const auto& l : left) s += l;
  s += asymmetric ? "|" : ":";
  for (const auto& r : right) s += r;
  return s;
}

MeasurementBasis::MeasurementBasis(std::string l, std::vector<CVec> v) : label(std::move(l)), vectors(std::move(v)) {
  if (vectors.empty()) throw std::invalid_argument("MeasurementBasis: no vectors");
  const auto d = vectors.front().size();
  if (static_cast<Eigen::Index>(vectors.size()) != d) throw std::invalid_argument("MeasurementBasis: incomplete basis");
  CMat sum = CMat::Zero(d, d);
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != d) throw std::invalid_argument("MeasurementBasis: ragged vectors");
    for (size_t j = 0; j < vectors.size(); ++j) {
      cplx ip = vectors[i].dot(vectors[j]);
      if (std::abs(ip - cplx(i == j ? 1.0 : 0.0)) > 1e-9)
        throw std::invalid_argument("MeasurementBasis: vectors are not orthonormal");
    }
    sum += vectors[i] * vectors[i].adjoint();
  }
  if ((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("MeasurementBasis: projectors do not sum to identity");
}

MeasurementBasis MeasurementBasis::computational(const std::string& l, int d) {
  std::vector<CVec> v;
  for (int k = 0; k < d; ++k) v.push_back(CVec::Unit(d, k));
  return MeasurementBasis(l, v);
}

MeasurementBasis MeasurementBasis::from_unitary(const std::string& l, const CMat& u) {
  std::vector<CVec> v;
  for (Eigen::Index k = 0; k < u.cols(); ++k) v.push_back(u.col(k));
  return MeasurementBasis(l, v);
}

std::vector<CMat> MeasurementBasis::projectors() const {
  std::vector<CMat> p;
  for (const auto& v : vectors) p.push_back(v * v.adjoint());
  return p;
}

DensityMatrix dephase(const DensityMatrix& rho, const MeasurementBasis& basis) {
  int site = rho.space().index_of(basis.label);
  if (static_cast<int>(basis.vectors.size()) != rho.dims()[site])
    throw std::invalid_argument("dephase: basis dimension does not match subsystem");
  CMat out = CMat::Zero(rho.dim(), rho.dim());
  for (const auto& p : basis.projectors()) {
    CMat e = embed(rho.dims(), site, p);
    out += e * rho.data() * e;
  }
  return DensityMatrix::unchecked(rho.space(), out);
}

namespace {

DensityMatrix reduce(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  auto idx = rho.space().indices_of(keep);
  if (static_cast<int>(idx.size()) == rho.space().size()) return rho;
  return partial_trace(rho, keep);
}

// reduced state with factors reordered as left then right; returns (matrix, dX, dY)
struct Bipartite {
  CMat m;
  int dx;
  int dy;
};

Bipartite bipartite(const DensityMatrix& rho, const Partition& p) {
  p.check(rho.space());
  DensityMatrix r = reduce(rho, p.all());
  std::vector<int> order;
  int dx = 1, dy = 1;
  for (const auto& l : p.left) {
    order.push_back(r.space().index_of(l));
    dx *= r.dims()[order.back()];
  }
  for (const auto& l : p.right) {
    order.push_back(r.space().index_of(l));
    dy *= r.dims()[order.back()];
  }
  return {permute_subsystems_raw(r.data(), r.dims(), order), dx, dy};
}

double entropy_bits(const RVec& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s -= p[i] * std::log2(p[i]);
  return s;
}

}  // namespace

double negativity(const DensityMatrix& rho, const Partition& p) {
  auto b = bipartite(rho, p);
  CMat pt = partial_transpose_raw(b.m, {b.dx, b.dy}, {0});
  return std::max(0.0, 0.5 * (trace_norm_hermitian(pt) - 1.0));
}

double log_negativity(const DensityMatrix& rho, const Partition& p) {
  return std::log2(2.0 * negativity(rho, p) + 1.0);
}

double entropy_of_entanglement(const Ket& psi, const Partition& p) {
  DensityMatrix rho(psi);
  p.check(rho.space());
  if (static_cast<int>(p.all().size()) != rho.space().size())
    throw std::invalid_argument("entropy_of_entanglement: partition must cover the pure state");
  return von_neumann_entropy(partial_trace(rho, p.left));
}

double mutual_information(const DensityMatrix& rho, const Partition& p) {
  auto b = bipartite(rho, p);
  double sxy = von_neumann_entropy(b.m);
  double sx = von_neumann_entropy(partial_trace_raw(b.m, {b.dx, b.dy}, {0}));
  double sy = von_neumann_entropy(partial_trace_raw(b.m, {b.dx, b.dy}, {1}));
  return std::max(0.0, sx + sy - sxy);
}

double conditional_entropy(const DensityMatrix& rho, const std::vector<std::string>& x,
                           const std::vector<std::string>& y) {
  Partition p(x, y, true);
  auto b = bipartite(rho, p);
  return von_neumann_entropy(b.m) - von_neumann_entropy(partial_trace_raw(b.m, {b.dx, b.dy}, {1}));
}

double classical_correlation_lb(const DensityMatrix& rho, const MeasurementBasis& bx, const MeasurementBasis& by) {
  DensityMatrix r = reduce(rho, {bx.label, by.label});
  int ix = r.space().index_of(bx.label), iy = r.space().index_of(by.label);
  CMat m = permute_subsystems_raw(r.data(), r.dims(), {ix, iy});
  const int dx = r.dims()[ix], dy = r.dims()[iy];
  if (static_cast<int>(bx.vectors.size()) != dx || static_cast<int>(by.vectors.size()) != dy)
    throw std::invalid_argument("classical_correlation_lb: basis dimension mismatch");
  RMat pj(dx, dy);
  for (int j = 0; j < dx; ++j)
    for (int k = 0; k < dy; ++k) {
      CVec v = kron(bx.vectors[j], by.vectors[k]);
      pj(j, k) = std::max(0.0, (v.adjoint() * m * v)(0, 0).real());
    }
  RVec px = pj.rowwise().sum(), py = pj.colwise().sum().transpose();
  RVec flat = Eigen::Map<RVec>(pj.data(), pj.size());
  return std::max(0.0, entropy_bits(px) + entropy_bits(py) - entropy_bits(flat));
}

double relative_entropy(const CMat& rho, const CMat& sigma) {
  auto es = hermitian_eig(sigma);
  const double floor = kEigClip;
  CMat rt = es.vectors.adjoint() * rho * es.vectors;
  double cross = 0.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    double w = rt(k, k).real();
    if (es.values[k] <= floor) {
      if (w > 1e-9) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross -= w * std::log2(es.values[k]);
  }
  return std::max(0.0, cross - von_neumann_entropy(rho));
}

// ---------------------------------------------------------------- REE

namespace {

struct ReeProblem {
  CMat rho;
  int dx, dy, terms;
  double neg_entropy;  // tr rho log2 rho
  int stride() const { return 1 + 2 * dx + 2 * dy; }
  int size() const { return terms * stride(); }
};

double ree_eval(const ReeProblem& pr, const double* x, double* grad, CMat* sigma_out = nullptr) {
  const int D = pr.dx * pr.dy, st = pr.stride(), n = pr.terms;
  CMat A(pr.dx, n), B(pr.dy, n), V(D, n);
  RVec w(n), norm(n);
  for (int i = 0; i < n; ++i) {
    const double* q = x + i * st;
    w[i] = q[0];
    for (int j = 0; j < pr.dx; ++j) A(j, i) = cplx(q[1 + 2 * j], q[2 + 2 * j]);
    for (int k = 0; k < pr.dy; ++k) B(k, i) = cplx(q[1 + 2 * pr.dx + 2 * k], q[2 + 2 * pr.dx + 2 * k]);
    norm[i] = std::max(A.col(i).norm() * B.col(i).norm(), 1e-300);
    for (int j = 0; j < pr.dx; ++j)
      for (int k = 0; k < pr.dy; ++k) V(j * pr.dy + k, i) = A(j, i) * B(k, i) / norm[i];
  }
  const double W = std::max(w.squaredNorm(), 1e-300);
  const RVec p = w.cwiseAbs2() / W;
  CMat sigma = V * p.asDiagonal() * V.adjoint();
  if (sigma_out) *sigma_out = sigma;
  Eigen::SelfAdjointEigenSolver<CMat> es(sigma);
  RVec lam = es.eigenvalues().cwiseMax(1e-300);
  const CMat& U = es.eigenvectors();
  CMat rt = U.adjoint() * pr.rho * U;
  double f = pr.neg_entropy;
  for (int k = 0; k < D; ++k) f -= rt(k, k).real() * std::log2(lam[k]);
  if (!grad) return f;

  CMat F(D, D);
  for (int k = 0; k < D; ++k)
    for (int l = 0; l < D; ++l) {
      double d = lam[k] - lam[l];
      if (std::abs(d) <= 1e-12 * std::max(lam[k], lam[l]))
        F(k, l) = 2.0 / (lam[k] + lam[l]);
      else
        F(k, l) = (std::log(lam[k]) - std::log(lam[l])) / d;
    }
  CMat G = -(U * rt.cwiseProduct(F) * U.adjoint()) / std::log(2.0);
  CMat GV = G * V;
  RVec c(n);
  for (int i = 0; i < n; ++i) c[i] = V.col(i).dot(GV.col(i)).real();
  const double pc = p.dot(c);
  for (int i = 0; i < n; ++i) {
    CVec gx = (2.0 * p[i] / norm[i]) * (GV.col(i) - c[i] * V.col(i));
    double* g = grad + i * st;
    g[0] = (2.0 * w[i] / W) * (c[i] - pc);
    for (int j = 0; j < pr.dx; ++j) {
      cplx ga = 0.0;
      for (int k = 0; k < pr.dy; ++k) ga += gx[j * pr.dy + k] * std::conj(B(k, i));
      g[1 + 2 * j] = ga.real();
      g[2 + 2 * j] = ga.imag();
    }
    for (int k = 0; k < pr.dy; ++k) {
      cplx gb = 0.0;
      for (int j = 0; j < pr.dx; ++j) gb += gx[j * pr.dy + k] * std::conj(A(j, i));
      g[1 + 2 * pr.dx + 2 * k] = gb.real();
      g[2 + 2 * pr.dx + 2 * k] = gb.imag();
    }
  }
  return f;
}

double gsl_ree_f(const gsl_vector* x, void* params) {
  return ree_eval(*static_cast<ReeProblem*>(params), x->data, nullptr);
}

void gsl_ree_df(const gsl_vector* x, void* params, gsl_vector* g) {
  ree_eval(*static_cast<ReeProblem*>(params), x->data, g->data);
}

void gsl_ree_fdf(const gsl_vector* x, void* params, double* f, gsl_vector* g) {
  *f = ree_eval(*static_cast<ReeProblem*>(params), x->data, g->data);
}

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::vector<double> x;
};

RestartOutcome ree_restart(ReeProblem pr, std::uint64_t seed, const ReeOptions& opts) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  const int n = pr.size();
  gsl_vector* x = gsl_vector_alloc(n);
  for (int i = 0; i < pr.terms; ++i) {
    gsl_vector_set(x, i * pr.stride(), unif(rng));
    for (int k = 1; k < pr.stride(); ++k) gsl_vector_set(x, i * pr.stride() + k, normal(rng));
  }
  gsl_multimin_function_fdf fn{&gsl_ree_f, &gsl_ree_df, &gsl_ree_fdf, static_cast<size_t>(n), &pr};
  gsl_multimin_fdfminimizer* s = gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n);
  gsl_multimin_fdfminimizer_set(s, &fn, x, 0.05, 0.1);
  RestartOutcome out;
  for (int it = 0; it < opts.max_iter; ++it) {
    int status = gsl_multimin_fdfminimizer_iterate(s);
    if (status) break;
    if (gsl_multimin_test_gradient(s->gradient, opts.grad_tol) == GSL_SUCCESS) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged && gsl_blas_dnrm2(s->gradient) < 1e-5) out.converged = true;
  out.value = s->f;
  out.x.assign(s->x->data, s->x->data + n);
  gsl_multimin_fdfminimizer_free(s);
  gsl_vector_free(x);
  return out;
}

struct GslHandlerGuard {
  gsl_error_handler_t* old;
  GslHandlerGuard() : old(gsl_set_error_handler_off()) {}
  ~GslHandlerGuard() { gsl_set_error_handler(old); }
};

}  // namespace

ReeResult ree_numeric(const DensityMatrix& rho, const Partition& p, const ReeOptions& opts) {
  auto b = bipartite(rho, p);
  if (b.dx * b.dy > 16) throw std::invalid_argument("ree_numeric: total dimension above 16");
  if (opts.restarts < 1) throw std::invalid_argument("ree_numeric: need at least one restart");
  GslHandlerGuard guard;
  ReeProblem pr{b.m, b.dx, b.dy, opts.terms > 0 ? opts.terms : (b.dx * b.dy) * (b.dx * b.dy),
                -von_neumann_entropy(b.m)};
  std::vector<RestartOutcome> outs(opts.restarts);
  parallel_for(outs.size(), [&](std::size_t r) {
    outs[r] = ree_restart(pr, opts.seed + 0x9E3779B97F4A7C15ULL * (r + 1), opts);
  });
  ReeResult res;
  std::size_t best = 0;
  for (std::size_t r = 0; r < outs.size(); ++r) {
    res.restart_values.push_back(outs[r].value);
    if (outs[r].converged) ++res.converged_restarts;
    if (outs[r].value < outs[best].value) best = r;
  }
  res.value = std::max(0.0, outs[best].value);
  res.converged = outs[best].converged;
  ree_eval(pr, outs[best].x.data(), nullptr, &res.sigma);
  return res;
}

// ---------------------------------------------------------------- RED

namespace {

struct RedProblem {
  CMat rho;  // measured factor first
  int dm, dr;
  int evaluations = 0;
};

CMat basis_unitary(int d, const double* q) {
  if (d == 2) {
    double th = q[0], ph = q[1];
    CMat u(2, 2);
    cplx e = std::polar(1.0, ph);
    u(0, 0) = std::cos(th / 2);
    u(1, 0) = e * std::sin(th / 2);
    u(0, 1) = -std::conj(e) * std::sin(th / 2);
    u(1, 1) = std::cos(th / 2);
    return u;
  }
  CMat h = CMat::Zero(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) h(i, i) = q[k++];
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      h(i, j) = cplx(q[k], q[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  return expm(CMat(cplx(0, 1) * h));
}

int basis_params(int d) { return d == 2 ? 2 : d * d; }

double measured_entropy(RedProblem& pr, const double* q) {
  ++pr.evaluations;
  CMat u = basis_unitary(pr.dm, q);
  CMat big = kron(u, CMat(CMat::Identity(pr.dr, pr.dr)));
  CMat r = big.adjoint() * pr.rho * big;
  double s = 0.0;
  for (int j = 0; j < pr.dm; ++j) s += entropy_bits(clipped_eigenvalues(r.block(j * pr.dr, j * pr.dr, pr.dr, pr.dr)));
  return s;
}

double gsl_red_f(const gsl_vector* x, void* params) {
  return measured_entropy(*static_cast<RedProblem*>(params), x->data);
}

}  // namespace

RedResult red_discord(const DensityMatrix& rho, const std::string& measured, const RedOptions& opts) {
  int site = rho.space().index_of(measured);
  const int dm = rho.dims()[site];
  if (dm > 4) throw std::invalid_argument("red_discord: measured subsystem dimension above 4");
  std::vector<int> order{site};
  for (int k = 0; k < rho.space().size(); ++k)
    if (k != site) order.push_back(k);
  RedProblem pr{permute_subsystems_raw(rho.data(), rho.dims(), order), dm, rho.dim() / dm};
  const double s0 = von_neumann_entropy(rho.data());
  const int np = basis_params(dm);
  std::vector<double> best(np, 0.0);
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> q(np);
  if (dm == 2) {
    for (int i = 0; i < opts.grid_theta; ++i)
      for (int j = 0; j < opts.grid_phi; ++j) {
        q[0] = M_PI * i / opts.grid_theta;
        q[1] = 2.0 * M_PI * j / opts.grid_phi;
        double v = measured_entropy(pr, q.data());
        if (v < best_val) {
          best_val = v;
          best = q;
        }
      }
  } else {
    double v = measured_entropy(pr, q.data());
    best_val = v;
    best = q;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-M_PI, M_PI);
    for (int s = 0; s < opts.grid_theta * opts.grid_phi; ++s) {
      for (auto& x : q) x = unif(rng);
      v = measured_entropy(pr, q.data());
      if (v < best_val) {
        best_val = v;
        best = q;
      }
    }
  }
  GslHandlerGuard guard;
  gsl_vector* x = gsl_vector_alloc(np);
  gsl_vector* step = gsl_vector_alloc(np);
  for (int k = 0; k < np; ++k) {
    gsl_vector_set(x, k, best[k]);
    gsl_vector_set(step, k, dm == 2 ? M_PI / opts.grid_phi : 0.3);
  }
  gsl_multimin_function fn{&gsl_red_f, static_cast<size_t>(np), &pr};
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, np);
  gsl_multimin_fminimizer_set(s, &fn, x, step);
  RedResult res;
  for (int it = 0; it < opts.max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(s)) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), opts.simplex_tol) == GSL_SUCCESS) {
      res.converged = true;
      break;
    }
  }
  double val = s->fval;
  std::vector<double> xb(s->x->data, s->x->data + np);
  if (best_val < val) {
    val = best_val;
    xb = best;
  }
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(x);
  gsl_vector_free(step);
  CMat u = basis_unitary(dm, xb.data());
  for (int k = 0; k < dm; ++k) res.basis.push_back(u.col(k));
  res.value = std::max(0.0, val - s0);
  res.evaluations = pr.evaluations;
  return res;
}

// ---------------------------------------------------------------- flags

std::vector<FlagBranch> flags_decompose(const DensityMatrix& rho, const std::string& flag_label, double tol) {
  int site = rho.space().index_of(flag_label);
  const int df = rho.dims()[site];
  std::vector<int> order, rest;
  for (int k = 0; k < rho.space().size(); ++k)
    if (k != site) {
      order.push_back(k);
      rest.push_back(k);
    }
  order.push_back(site);
  if (rest.empty()) throw std::invalid_argument("flags_decompose: no subsystems besides the flag");
  CMat m = permute_subsystems_raw(rho.data(), rho.dims(), order);
  const int dr = rho.dim() / df;
  Space rest_space = rho.space().restricted(rest);
  CMat rho_f = partial_trace_raw(m, {dr, df}, {1});

  std::mt19937_64 rng(0xF1A65);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < 4; ++attempt) {
    CMat x(dr, dr);
    for (int i = 0; i < dr; ++i)
      for (int j = 0; j < dr; ++j) x(i, j) = cplx(normal(rng), normal(rng));
    x = hermitize(x);
    CMat cond = partial_trace_raw(kron(x, CMat(CMat::Identity(df, df))) * m, {dr, df}, {1});
    CMat probe = rho_f + 0.37 * hermitize(cond);
    auto es = hermitian_eig(probe);
    CMat big = kron(CMat(CMat::Identity(dr, dr)), es.vectors);
    CMat r = big.adjoint() * m * big;
    double off = 0.0;
    for (int i = 0; i < rho.dim(); ++i)
      for (int j = 0; j < rho.dim(); ++j)
        if (i % df != j % df) off = std::max(off, std::abs(r(i, j)));
    if (off > tol) continue;
    std::vector<FlagBranch> out;
    for (int c = 0; c < df; ++c) {
      CMat blk(dr, dr);
      for (int i = 0; i < dr; ++i)
        for (int j = 0; j < dr; ++j) blk(i, j) = r(i * df + c, j * df + c);
      double p = blk.trace().real();
      if (p <= tol) continue;
      out.push_back({p, DensityMatrix::unchecked(rest_space, blk / p), es.vectors.col(c)});
    }
    return out;
  }
  throw std::invalid_argument("flags_decompose: state is not quantum-classical on '" + flag_label + "'");
}

}  // namespace entmed
