#pragma once

#include "entmed/qcore.hpp"

namespace entmed {

// energies of H over rho0 in units of hbar*Omega; E_g is the smallest eigenvalue of H
struct QslResources {
  double mean = 0.0;
  double spread = 0.0;
  double ground = 0.0;
  double min() const { return mean < spread ? mean : spread; }
};

QslResources qsl_resources(const HermitianOp& H, const DensityMatrix& rho0);

struct QslBound {
  double gamma = 0.0;  // dimensionless, +inf when the resource vanishes
  double theta = 0.0;  // Bures angle
  QslResources res;
  bool infinite = false;
  double seconds(double omega) const { return gamma / omega; }
};

QslBound qsl_time_bound(const DensityMatrix& rho0, const DensityMatrix& rhot, const HermitianOp& H);
// rho0, rhot may be marginals of the state the resources were computed on
QslBound qsl_time_bound(const DensityMatrix& rho0, const DensityMatrix& rhot, const QslResources& res);

double direct_bound(int d);

struct ResourceCheck {
  bool equal = false;
  double mean = 0.0;
  double spread = 0.0;
};
ResourceCheck resource_equality_check(const HermitianOp& H, const DensityMatrix& rho0, double tol = 1e-9);

// root fidelity with |11><11| on a two-party state
double charge(const DensityMatrix& rho_AB);

}  // namespace entmed
