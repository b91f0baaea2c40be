#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "entmed/corr.hpp"
#include "entmed/dynamics.hpp"
#include "entmed/langevin.hpp"
#include "entmed/qsl.hpp"
#include "gen.hpp"

namespace entmed::props {

namespace {

void record(Report& r, double excess) {
  ++r.instances;
  if (excess > 0.0) {
    ++r.violations;
    r.worst = std::max(r.worst, excess);
  }
}

DensityMatrix dm(const Space& sp, const CMat& m) { return DensityMatrix(sp, hermitize(m)); }

}  // namespace

std::string Report::summary() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s: %d instances, %d violations, worst excess %.3g", name.c_str(), instances,
                violations, worst);
  std::string s = buf;
  if (!note.empty()) s += " (" + note + ")";
  return s;
}

Report gaussian_physicality(int n, std::uint64_t seed) {
  Report r{"gaussian physicality under propagation"};
  testgen::Gen g(seed);
  const double tol = 1e-8;
  for (int i = 0; i < n; ++i) {
    const int modes = g.integer(1, 3);
    const int dim = 2 * modes;
    const double kappa = g.uniform(0.01, 0.5);
    DriftModel m;
    m.K = symplectic_form(modes) * g.symmetric(dim) - kappa * RMat::Identity(dim, dim);
    m.D = 2.0 * kappa * g.physical_cm(modes);
    m.V0 = g.physical_cm(modes);
    m.u0 = RVec::Zero(dim);
    PropagationOptions o;
    o.converge = false;
    auto tr = propagate_cm(m, linspace(0.0, g.uniform(1.0, 6.0), 16), o);
    double excess = 0.0;
    for (std::size_t k = 0; k < tr.V.size(); ++k) {
      const double nu = symplectic_eigenvalues(tr.lab(k)).minCoeff();
      excess = std::max(excess, 0.5 - tol - nu);
    }
    record(r, excess);
  }
  return r;
}

Report symplectic_invariance(int n, std::uint64_t seed) {
  Report r{"symplectic spectrum invariance"};
  testgen::Gen g(seed);
  for (int i = 0; i < n; ++i) {
    const int modes = g.integer(1, 4);
    RMat v = g.physical_cm(modes);
    RMat s = g.symplectic(modes);
    RVec a = symplectic_eigenvalues(v);
    RVec b = symplectic_eigenvalues(RMat(s * v * s.transpose()));
    const double tol = 1e-8 * std::max(1.0, a.maxCoeff());
    record(r, (a - b).cwiseAbs().maxCoeff() - tol);
  }
  return r;
}

Report negativity_locc(int n, std::uint64_t seed) {
  Report r{"negativity LOCC monotonicity"};
  testgen::Gen g(seed);
  const double tol = 1e-9;
  for (int i = 0; i < n; ++i) {
    const int dA = g.integer(2, 3), dB = dA == 3 ? 2 : g.integer(2, 3);
    const Space sp({dA, dB}, {"A", "B"});
    const Partition p({"A"}, {"B"});
    CMat rho = g.coin(0.5) ? g.pure(dA * dB) : g.density(dA * dB);
    CMat out = CMat::Zero(dA * dB, dA * dB);
    if (g.coin()) {
      // shared randomness over products of local channels
      const int terms = g.integer(1, 3);
      double total = 0.0;
      for (int t = 0; t < terms; ++t) {
        const double w = g.uniform(0.1, 1.0);
        total += w;
        auto ks = testgen::product_kraus(g.kraus(dA, g.integer(1, 3)), g.kraus(dB, g.integer(1, 3)));
        out += w * testgen::apply_kraus(ks, rho);
      }
      out /= total;
    } else {
      // A measures, tells B, B applies a unitary conditioned on the outcome
      for (const auto& k : g.kraus(dA, g.integer(2, 4))) {
        CMat op = kron(k, g.unitary(dB));
        out += op * rho * op.adjoint();
      }
    }
    const double before = negativity(dm(sp, rho), p);
    const double after = negativity(dm(sp, out), p);
    record(r, after - before - tol);
  }
  return r;
}

Report flags_equality(int n, std::uint64_t seed) {
  Report r{"flags-condition equality"};
  testgen::Gen g(seed);
  const double tol = 1e-9;
  for (int i = 0; i < n; ++i) {
    const int dc = g.integer(2, 3);
    const Space sp({2, 2, dc}, {"A", "B", "C"});
    const Space ab({2, 2}, {"A", "B"});
    CMat u = g.unitary(dc);
    std::vector<double> w(dc);
    double total = 0.0;
    for (auto& x : w) total += (x = g.uniform(0.05, 1.0));
    CMat rho = CMat::Zero(4 * dc, 4 * dc);
    double avg = 0.0;
    for (int c = 0; c < dc; ++c) {
      const double pc = w[c] / total;
      CMat branch = g.coin(0.4) ? g.pure(4) : g.density(4);
      CVec f = u.col(c);
      rho += pc * kron(branch, CMat(f * f.adjoint()));
      avg += pc * negativity(dm(ab, branch), Partition({"A"}, {"B"}));
    }
    DensityMatrix state = dm(sp, rho);
    double excess = std::abs(negativity(state, Partition({"A"}, {"B", "C"})) - avg) - tol;
    CMat rebuilt = CMat::Zero(4 * dc, 4 * dc);
    double avg_dec = 0.0;
    for (const auto& b : flags_decompose(state, "C")) {
      rebuilt += b.p * kron(b.state.data(), CMat(b.flag * b.flag.adjoint()));
      avg_dec += b.p * negativity(b.state, Partition({"A"}, {"B"}));
    }
    excess = std::max(excess, (rebuilt - rho).cwiseAbs().maxCoeff() - tol);
    excess = std::max(excess, std::abs(avg_dec - avg) - tol);
    record(r, excess);
  }
  return r;
}

Report strong_subadditivity(int n, std::uint64_t seed) {
  Report r{"strong subadditivity"};
  testgen::Gen g(seed);
  for (int i = 0; i < n; ++i) {
    const int dy = g.integer(2, 3);
    const Space sp({2, dy, 2}, {"X", "Y", "Z"});
    DensityMatrix rho = dm(sp, g.density(4 * dy));
    const double lhs = von_neumann_entropy(rho) + von_neumann_entropy(partial_trace(rho, {"Y"}));
    const double rhs =
        von_neumann_entropy(partial_trace(rho, {"X", "Y"})) + von_neumann_entropy(partial_trace(rho, {"Y", "Z"}));
    record(r, lhs - rhs - 1e-9);
  }
  return r;
}

Report fuchs_van_de_graaf(int n, std::uint64_t seed) {
  Report r{"Fuchs-van de Graaf bounds"};
  testgen::Gen g(seed);
  for (int i = 0; i < n; ++i) {
    const int d = g.integer(2, 6);
    const Space sp({d});
    const bool pure = g.coin(0.25);
    DensityMatrix a = dm(sp, pure ? g.pure(d) : g.density(d));
    DensityMatrix b = dm(sp, pure ? g.pure(d) : g.density(d));
    const double f = fidelity(a, b), t = trace_distance(a, b);
    double excess = std::max(1.0 - f - t, t - std::sqrt(std::max(0.0, 1.0 - f * f))) - 1e-9;
    record(r, excess);
  }
  return r;
}

std::vector<Report> invariant_suites(int n, std::uint64_t seed) {
  return {gaussian_physicality(n, seed + 1), symplectic_invariance(n, seed + 2), negativity_locc(n, seed + 3),
          flags_equality(n, seed + 4),       strong_subadditivity(n, seed + 5),  fuchs_van_de_graaf(n, seed + 6)};
}

// ----------------------------------------------------------------- speed limits

namespace {

const Space kQ3({2, 2, 2}, {"A", "B", "C"});

struct Run {
  HermitianOp H;
  DensityMatrix rho0;
};

HermitianOp normalise(const HermitianOp& h, const DensityMatrix& rho0) {
  const double m = qsl_resources(h, rho0).min();
  return h * (1.0 / m);
}

// three families: generic H on ABC, dressed direct XX with an idle mediator, dressed GHZ mediator
Run random_run(testgen::Gen& g, int family) {
  const CMat X = ops::sigma_x();
  if (family == 0) {
    CMat rab = g.coin() ? CMat(kron(g.pure(2), g.pure(2))) : g.separable(2, 2, g.integer(1, 3));
    DensityMatrix rho0 = dm(kQ3, kron(rab, g.density(2)));
    return {normalise(HermitianOp(kQ3, g.hermitian(8)), rho0), rho0};
  }
  CMat u = kron(kron(g.unitary(2), g.unitary(2)), g.unitary(2));
  if (family == 1) {
    CMat h = kron(kron(X, X), ops::identity(2));
    CVec e0 = CVec::Unit(4, 0);
    CMat r0 = kron(CMat(e0 * e0.adjoint()), g.density(2));
    DensityMatrix rho0 = dm(kQ3, u * r0 * u.adjoint());
    return {normalise(HermitianOp(kQ3, hermitize(u * h * u.adjoint())), rho0), rho0};
  }
  Scenario s = scenario_hamiltonian("ghz_saturation");
  DensityMatrix rho0 = dm(kQ3, u * s.rho0.data() * u.adjoint());
  return {normalise(HermitianOp(kQ3, hermitize(u * s.H.data() * u.adjoint())), rho0), rho0};
}

double negativity_ab(const DensityMatrix& rho) { return negativity(partial_trace(rho, {"A", "B"}), Partition({"A"}, {"B"})); }

// golden-section refinement of a local maximum of f on [a, b]
template <class F>
double argmax(F f, double a, double b) {
  const double q = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - q * (b - a), d = a + q * (b - a), fc = f(c), fd = f(d);
  while (b - a > 1e-10) {
    if (fc >= fd) {
      b = d, d = c, fd = fc, c = b - q * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd, d = a + q * (b - a), fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Report max_entangling_time(int n, std::uint64_t seed, int* reached) {
  Report r{"time to maximal entanglement"};
  testgen::Gen g(seed);
  const double nmax = 0.5, bound = direct_bound(2);
  const auto grid = linspace(0.0, 3.0, 301);
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    Run run = random_run(g, i % 3);
    UnitaryPropagator up(run.H);
    auto nab = [&](double t) { return negativity_ab(up.apply(run.rho0, t)); };
    std::size_t k = 0;
    while (k < grid.size() && nab(grid[k]) < nmax - 1e-3) ++k;
    if (k == grid.size()) {
      record(r, 0.0);
      continue;
    }
    ++hits;
    const double lo = k ? grid[k - 1] : 0.0;
    const double hi = std::min(grid.back(), grid[k] + 0.1);
    const double t_star = argmax(nab, lo, hi);
    record(r, bound - 1e-6 - t_star);
  }
  if (reached) *reached = hits;
  r.note = std::to_string(hits) + " runs reached the maximum";
  return r;
}

Report qsl_validity(int n, std::uint64_t seed, bool unified) {
  Report r{unified ? "speed-limit validity (unified)" : "speed-limit validity (spread)"};
  testgen::Gen g(seed);
  const auto grid = linspace(0.0, 2.0, 41);
  for (int i = 0; i < n; ++i) {
    Run run = random_run(g, i % 3);
    QslResources res = qsl_resources(run.H, run.rho0);
    if (!unified) res.mean = std::max(res.mean, res.spread);
    UnitaryPropagator up(run.H);
    const DensityMatrix ab0 = partial_trace(run.rho0, {"A", "B"});
    double excess = 0.0;
    for (double t : grid) {
      DensityMatrix rt = up.apply(run.rho0, t);
      const double full = qsl_time_bound(run.rho0, rt, res).gamma;
      const double part = qsl_time_bound(ab0, partial_trace(rt, {"A", "B"}), res).gamma;
      excess = std::max(excess, std::max(full, part) - t - 1e-6);
    }
    record(r, excess);
  }
  return r;
}

Report initial_negativity_rate(int n, std::uint64_t seed, double dt) {
  Report r{"initial negativity rate"};
  testgen::Gen g(seed);
  for (int i = 0; i < n; ++i) {
    CMat rab = g.coin(0.3) ? g.pure(4) : g.density(4);
    DensityMatrix rho0 = dm(kQ3, kron(rab, g.density(2)));
    CMat hac = kron(g.hermitian(4), ops::identity(2));
    CMat hac_full = permute_subsystems_raw(hac, {2, 2, 2}, {0, 2, 1});
    CMat hbc = kron(ops::identity(2), g.hermitian(4));
    LindbladModel model(HermitianOp(kQ3, hermitize(hac_full + hbc)));
    for (const char* lab : {"A", "B", "C"})
      if (g.coin(0.7)) model.add_local_jump(lab, g.uniform(0.1, 1.0) * g.ginibre(2, 2));
    EvolutionSpec spec{dt, dt, {0.0, dt}};
    auto traj = lindblad_evolve(rho0, model, spec);
    const double n0 = negativity_ab(traj.front()), n1 = negativity_ab(traj.back());
    record(r, n1 - n0 - 1e-8);
  }
  return r;
}

}  // namespace entmed::props
