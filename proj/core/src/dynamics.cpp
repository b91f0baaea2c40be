#include "entmed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace entmed {

UnitaryPropagator::UnitaryPropagator(const HermitianOp& h) : space_(h.space()), eig_(hermitian_eig(h.data())) {}

CMat UnitaryPropagator::U(double t) const {
  CVec ph(eig_.values.size());
  for (Eigen::Index k = 0; k < ph.size(); ++k) ph[k] = std::polar(1.0, -eig_.values[k] * t);
  return eig_.vectors * ph.asDiagonal() * eig_.vectors.adjoint();
}

Ket UnitaryPropagator::apply(const Ket& psi, double t) const {
  if (!(psi.space().dims == space_.dims)) throw std::invalid_argument("evolve: state and Hamiltonian dims differ");
  CVec c = eig_.vectors.adjoint() * psi.amplitudes();
  for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= std::polar(1.0, -eig_.values[k] * t);
  CVec out = eig_.vectors * c;
  return Ket(psi.space(), out / out.norm());
}

DensityMatrix UnitaryPropagator::apply(const DensityMatrix& rho, double t) const {
  if (!(rho.dims() == space_.dims)) throw std::invalid_argument("evolve: state and Hamiltonian dims differ");
  CMat u = U(t);
  return DensityMatrix::unchecked(rho.space(), hermitize(u * rho.data() * u.adjoint()));
}

Ket evolve_unitary(const Ket& psi, const HermitianOp& h, double t) { return UnitaryPropagator(h).apply(psi, t); }

DensityMatrix evolve_unitary(const DensityMatrix& rho, const HermitianOp& h, double t) {
  return UnitaryPropagator(h).apply(rho, t);
}

namespace {

CMat trotter_step(const HermitianOp& h1, const HermitianOp& h2, double t, int n) {
  if (n < 1) throw std::invalid_argument("trotter_evolve: n must be positive");
  if (!(h1.dims() == h2.dims())) throw std::invalid_argument("trotter_evolve: Hamiltonians act on different spaces");
  return UnitaryPropagator(h2).U(t / n) * UnitaryPropagator(h1).U(t / n);
}

}  // namespace

Ket trotter_evolve(const Ket& psi, const HermitianOp& h1, const HermitianOp& h2, double t, int n) {
  CMat s = trotter_step(h1, h2, t, n);
  CVec v = psi.amplitudes();
  for (int k = 0; k < n; ++k) v = s * v;
  return Ket(psi.space(), v / v.norm());
}

DensityMatrix trotter_evolve(const DensityMatrix& rho, const HermitianOp& h1, const HermitianOp& h2, double t, int n) {
  CMat s = trotter_step(h1, h2, t, n);
  CMat u = CMat::Identity(s.rows(), s.cols());
  for (int k = 0; k < n; ++k) u = s * u;
  return DensityMatrix::unchecked(rho.space(), hermitize(u * rho.data() * u.adjoint()));
}

LindbladModel::LindbladModel(HermitianOp h) : h_(std::move(h)) {}

void LindbladModel::add_jump(const std::string& label, const CMat& full_op) {
  const auto& sp = h_.space();
  int site = sp.index_of(label);
  if (full_op.rows() != sp.total() || full_op.cols() != sp.total())
    throw std::invalid_argument("LindbladModel: jump operator has wrong size");
  const int d = sp.dims[site];
  CMat local = partial_trace_raw(full_op, sp.dims, {site}) / static_cast<double>(sp.total() / d);
  CMat rebuilt = embed(sp.dims, site, local);
  double scale = std::max(1.0, full_op.cwiseAbs().maxCoeff());
  if ((rebuilt - full_op).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("LindbladModel: jump operator is not local to subsystem '" + label + "'");
  jumps_.push_back({label, full_op});
}

void LindbladModel::add_local_jump(const std::string& label, const CMat& local_op) {
  jumps_.push_back({label, embed(h_.space().dims, h_.space().index_of(label), local_op)});
}

CMat LindbladModel::generator_heff() const {
  CMat heff = h_.data();
  for (const auto& j : jumps_) heff -= cplx(0, 0.5) * j.op.adjoint() * j.op;
  return heff;
}

std::vector<DensityMatrix> lindblad_evolve(const DensityMatrix& rho0, const LindbladModel& model,
                                           const EvolutionSpec& spec) {
  if (!(rho0.dims() == model.H().dims())) throw std::invalid_argument("lindblad_evolve: dims differ");
  std::vector<double> rec = spec.record_times;
  if (rec.empty()) rec.push_back(spec.t_max);
  for (size_t i = 0; i < rec.size(); ++i) {
    if (rec[i] < 0.0 || rec[i] > spec.t_max + 1e-12) throw std::invalid_argument("lindblad_evolve: record time outside [0, t_max]");
    if (i && !(rec[i] > rec[i - 1])) throw std::invalid_argument("lindblad_evolve: record times not increasing");
  }
  CMat heff = model.generator_heff();
  Eigen::JacobiSVD<CMat> svd(heff);
  double hn = svd.singularValues()(0);
  double dt = spec.dt > 0.0 ? spec.dt : (hn > 0.0 ? std::min(1e-3, 0.01 / hn) : 1e-3);
  auto rhs = [&](const CMat& r) -> CMat {
    CMat out = cplx(0, -1) * (heff * r - r * heff.adjoint());
    for (const auto& j : model.jumps()) out += j.op * r * j.op.adjoint();
    return out;
  };
  std::vector<DensityMatrix> traj;
  CMat r = rho0.data();
  double t = 0.0;
  for (double tr : rec) {
    double span = tr - t;
    if (span > 0.0) {
      int n = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9)));
      double h = span / n;
      for (int s = 0; s < n; ++s) {
        CMat k1 = rhs(r);
        CMat k2 = rhs(r + 0.5 * h * k1);
        CMat k3 = rhs(r + 0.5 * h * k2);
        CMat k4 = rhs(r + h * k3);
        r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        r = hermitize(r);
        double drift = std::abs(r.trace().real() - 1.0);
        if (drift > 1e-8) {
          std::ostringstream os;
          os << "lindblad_evolve: trace drift " << drift << " at t=" << t + (s + 1) * h << "; retry with dt below "
             << 0.5 * h;
          throw std::runtime_error(os.str());
        }
      }
      t = tr;
    }
    traj.push_back(DensityMatrix::unchecked(rho0.space(), r));
  }
  return traj;
}

// ---------------------------------------------------------------- scenarios

namespace {

double param(const std::map<std::string, double>& p, const std::string& k, double def) {
  auto it = p.find(k);
  return it == p.end() ? def : it->second;
}

int iparam(const std::map<std::string, double>& p, const std::string& k, int def) {
  double v = param(p, k, def);
  if (v < 0 || std::floor(v) != v) throw std::invalid_argument("scenario parameter '" + k + "' must be a non-negative integer");
  return static_cast<int>(v);
}

CMat op3(const CMat& a, const CMat& b, const CMat& c) { return kron(kron(a, b), c); }

Scenario make(const std::string& name, const Space& sp, const CMat& hac, const CMat& hbc, DensityMatrix rho0,
              std::optional<Ket> psi0 = std::nullopt) {
  HermitianOp ac(sp, hac), bc(sp, hbc);
  return Scenario{name, ac + bc, ac, bc, std::move(rho0), std::move(psi0), false};
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"instrumental_discord", "localisation", "ghz_saturation", "direct_xx", "charging_free",
          "charging_int", "jc_fields", "dipole_fields", "three_qubit_exchange"};
}

Scenario scenario_hamiltonian(const std::string& name, const std::map<std::string, double>& params) {
  const double w = param(params, "omega", 1.0);
  const CMat I = ops::identity(2), X = ops::sigma_x(), Y = ops::sigma_y(), Z = ops::sigma_z();
  const Space q3({2, 2, 2}, {"A", "B", "C"});
  const Space q2({2, 2}, {"A", "B"});

  if (name == "instrumental_discord") {
    DensityMatrix rho = DensityMatrix::unchecked(q3, 0.5 * DensityMatrix(Ket::basis(q3, {0, 1, 1})).data() +
                                                         0.5 * DensityMatrix(Ket::basis(q3, {1, 0, 0})).data());
    return make(name, q3, w * op3(X, I, X), w * op3(I, X, X), DensityMatrix(q3, rho.data()));
  }
  if (name == "localisation") {
    CVec psi_p = CVec::Zero(4), phi_p = CVec::Zero(4), plus(2), minus(2);
    psi_p[1] = psi_p[2] = 1.0 / std::sqrt(2.0);
    phi_p[0] = phi_p[3] = 1.0 / std::sqrt(2.0);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    CVec b1 = kron(psi_p, plus), b2 = kron(phi_p, minus);
    const double p = param(params, "p", 0.5);
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("scenario: localisation weight p outside [0, 1]");
    CMat rho = p * b1 * b1.adjoint() + (1.0 - p) * b2 * b2.adjoint();
    return make(name, q3, 0.5 * w * op3(X, I, X), 0.5 * w * op3(I, X, X), DensityMatrix(q3, rho));
  }
  if (name == "ghz_saturation") {
    CVec g = CVec::Zero(8);
    g[0] = g[7] = 1.0 / std::sqrt(2.0);
    Ket psi(q3, g);
    CMat hc1 = -(I + X + Y + Z), hc2 = I - X - Y + Z;
    const double c = w / (2.0 * std::sqrt(2.0));
    return make(name, q3, c * op3(Z, I, hc1), c * op3(I, Z, hc2), DensityMatrix(psi), psi);
  }
  if (name == "direct_xx" || name == "charging_int") {
    Ket psi = Ket::basis(q2, {0, 0});
    return make(name, q2, w * kron(X, X), CMat::Zero(4, 4), DensityMatrix(psi), psi);
  }
  if (name == "charging_free") {
    Ket psi = Ket::basis(q2, {0, 0});
    const double c = w / std::sqrt(2.0);
    return make(name, q2, c * kron(X, I), c * kron(I, X), DensityMatrix(psi), psi);
  }
  if (name == "jc_fields" || name == "dipole_fields") {
    const int m = iparam(params, "m", 1), n = iparam(params, "n", 1), k = iparam(params, "k", 0);
    if (k > 1) throw std::invalid_argument("scenario: atom level k must be 0 or 1");
    const int nmax = iparam(params, "n_max", default_fock_cutoff(m + n + k));
    if (m > nmax || n > nmax) throw std::invalid_argument("scenario: initial photon number above the Fock cutoff");
    const Space sp({nmax + 1, nmax + 1, 2}, {"A", "B", "C"});
    const CMat a = ops::annihilation(nmax), If = ops::identity(nmax + 1);
    const CMat sp_ = ops::sigma_plus(), sm = ops::sigma_minus();
    CMat hac, hbc;
    if (name == "jc_fields") {
      hac = w * (op3(a, If, sp_) + op3(a.adjoint(), If, sm));
      hbc = w * (op3(If, a, sp_) + op3(If, a.adjoint(), sm));
    } else {
      CMat xa = a + a.adjoint();
      hac = w * op3(xa, If, X);
      hbc = w * op3(If, xa, X);
    }
    Ket psi = Ket::basis(sp, {m, n, k});
    return make(name, sp, hac, hbc, DensityMatrix(psi), psi);
  }
  if (name == "three_qubit_exchange") {
    Ket psi = Ket::basis(q3, {1, 1, 0});
    const CMat sp_ = ops::sigma_plus(), sm = ops::sigma_minus();
    const double c = w / std::sqrt(2.0);
    Scenario s = make(name, q3, c * (op3(sp_, I, sm) + op3(sm, I, sp_)), c * (op3(I, sp_, sm) + op3(I, sm, sp_)),
                      DensityMatrix(psi), psi);
    s.exploratory = true;
    return s;
  }
  std::string known;
  for (const auto& s : scenario_names()) known += " " + s;
  throw std::invalid_argument("unknown scenario '" + name + "'; known:" + known);
}

int default_fock_cutoff(int total_excitations) { return total_excitations + 6; }

int converge_fock_cutoff(int start, const std::function<std::vector<double>(int)>& observables, double tol,
                         int max_cutoff) {
  int c = std::max(1, start);
  auto prev = observables(c);
  while (2 * c <= max_cutoff) {
    auto next = observables(2 * c);
    if (next.size() != prev.size()) throw std::runtime_error("converge_fock_cutoff: observable count changed");
    double diff = 0.0;
    for (size_t i = 0; i < next.size(); ++i) diff = std::max(diff, std::abs(next[i] - prev[i]));
    if (diff < tol) return c;
    c *= 2;
    prev = std::move(next);
  }
  std::ostringstream os;
  os << "converge_fock_cutoff: observables still moving at cutoff " << c;
  throw std::runtime_error(os.str());
}

CMat displacement_matrix(cplx alpha, int n_max) {
  const double x = std::norm(alpha);
  CMat d(n_max + 1, n_max + 1);
  for (int k = 0; k <= n_max; ++k)
    for (int n = 0; n <= n_max; ++n) {
      const int lo = std::min(k, n), diff = std::abs(k - n);
      const double lognorm = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + diff + 1.0)) - 0.5 * x;
      cplx base = k >= n ? alpha : -std::conj(alpha);
      cplx pw = diff == 0 ? cplx(1.0) : std::pow(base, diff);
      d(k, n) = std::exp(lognorm) * pw * std::assoc_laguerre(lo, diff, x);
    }
  return d;
}

namespace {

double dipole_overlap(int n, double gt) {
  const double a2 = gt * gt;
  return std::exp(-2.0 * a2) * std::laguerre(n, 4.0 * a2);
}

}  // namespace

DensityMatrix dipole_effective_state(int m, int n, double gt) {
  if (m < 0 || n < 0) throw std::invalid_argument("dipole_effective_state: negative photon number");
  const double xm = dipole_overlap(m, gt), xn = dipole_overlap(n, gt);
  auto d = [&](int sm, int sn) { return 2.0 * std::sqrt(std::max(0.0, (1.0 + sm * xm) * (1.0 + sn * xn))); };
  const double dpp = d(1, 1), dpm = d(1, -1), dmp = d(-1, 1), dmm = d(-1, -1);
  CMat r = CMat::Zero(4, 4);
  r(0, 0) = dpp * dpp;
  r(1, 1) = dpm * dpm;
  r(2, 2) = dmp * dmp;
  r(3, 3) = dmm * dmm;
  r(0, 3) = r(3, 0) = dpp * dmm;
  r(1, 2) = r(2, 1) = dpm * dmp;
  r /= 16.0;
  return DensityMatrix::unchecked(Space({2, 2}, {"A", "B"}), r);
}

CMat dipole_branch_vectors(int n, double gt, int n_max) {
  const cplx alpha(0.0, gt);
  CMat dp = displacement_matrix(alpha, n_max), dm = displacement_matrix(-alpha, n_max);
  CVec en = CVec::Unit(n_max + 1, n);
  const double x = dipole_overlap(n, gt);
  CMat out(n_max + 1, 2);
  out.col(0) = (dp + dm) * en / std::sqrt(std::max(1e-300, 2.0 * (1.0 + x)));
  out.col(1) = (dp - dm) * en / std::sqrt(std::max(1e-300, 2.0 * (1.0 - x)));
  return out;
}

CMat dipole_effective_embedded(int m, int n, double gt, int n_max) {
  CMat bm = dipole_branch_vectors(m, gt, n_max), bn = dipole_branch_vectors(n, gt, n_max);
  const int d = n_max + 1;
  CMat w(d * d, 4);
  w.col(0) = kron(CVec(bm.col(0)), CVec(bn.col(0)));
  w.col(1) = kron(CVec(bm.col(0)), CVec(bn.col(1)));
  w.col(2) = kron(CVec(bm.col(1)), CVec(bn.col(0)));
  w.col(3) = kron(CVec(bm.col(1)), CVec(bn.col(1)));
  return w * dipole_effective_state(m, n, gt).data() * w.adjoint();
}

}  // namespace entmed
