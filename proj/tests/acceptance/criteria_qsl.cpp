#include <cmath>

#include "criteria.hpp"
#include "entmed/dynamics.hpp"
#include "entmed/langevin.hpp"
#include "entmed/qsl.hpp"
#include "support/gen.hpp"
#include "support/properties.hpp"

namespace acceptance {

using namespace entmed;

namespace {

CMat op3(const CMat& a, const CMat& b, const CMat& c) { return kron(kron(a, b), c); }

void report(Outcome& o, const props::Report& r) { o.check(r.ok(), r.summary()); }

}  // namespace

Outcome qsl_suite() {
  Outcome o;
  Scenario d = scenario_hamiltonian("direct_xx");
  UnitaryPropagator ud(d.H);
  double worst = 0.0;
  for (double T : linspace(0.0, M_PI / 4, 41))
    worst = std::max(worst, std::abs(qsl_time_bound(d.rho0, ud.apply(d.rho0, T), d.H).gamma - T));
  o.check(worst <= 1e-6, fmt("direct XX run: max |Gamma(T) - T| = %.2e (tol 1e-6)", worst));
  o.check(direct_bound(2) == M_PI / 4, fmt("Gamma_di(2) = %.17g equals pi/4", direct_bound(2)));

  int reached = 0;
  props::Report mt = props::max_entangling_time(500, 52, &reached);
  report(o, mt);
  o.check(reached > 0, fmt("%d of 500 runs reached maximal entanglement", reached));
  report(o, props::initial_negativity_rate(500, 51));

  Scenario c = scenario_hamiltonian("charging_int");
  const double xi = charge(evolve_unitary(c.rho0, c.H, M_PI / 2));
  o.check(std::abs(xi - 1) <= 1e-6, fmt("direct charging: Xi(pi/2) = %.10f", xi));

  // mediated X_C (X_A + X_B), resource-normalised for each mediator state
  const Space q3({2, 2, 2}, {"A", "B", "C"});
  const CMat h = op3(ops::sigma_x(), ops::identity(2), ops::sigma_x()) +
                 op3(ops::identity(2), ops::sigma_x(), ops::sigma_x());
  testgen::Gen g(53);
  double xi_max = 0.0;
  for (int run = 0; run < 20; ++run) {
    const CMat rc = run == 0 ? CMat(DensityMatrix(Ket::basis(Space({2}, {"C"}), {0})).data()) : g.density(2);
    CMat r00 = CMat::Zero(4, 4);
    r00(0, 0) = 1.0;
    DensityMatrix r0(q3, kron(r00, rc));
    HermitianOp H(q3, h);
    const double scale = qsl_resources(H, r0).min();
    if (scale <= 0) continue;
    UnitaryPropagator up(HermitianOp(q3, h / scale));
    for (double T : linspace(0.0, M_PI / 2, 101))
      if (T > 0) xi_max = std::max(xi_max, charge(partial_trace(up.apply(r0, T), {"A", "B"})));
  }
  o.check(xi_max < 1 - 1e-6, fmt("mediated charging from |00> x rho_C: max Xi on (0, pi/2] = %.6f (< 1)", xi_max));
  return o;
}

Outcome invariant_suites() {
  Outcome o;
  for (const auto& r : props::invariant_suites(500, 2024)) {
    report(o, r);
    if (r.instances < 500) o.check(false, r.name + ": fewer than 500 instances");
  }
  return o;
}

}  // namespace acceptance
