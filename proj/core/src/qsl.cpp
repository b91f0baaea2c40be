#include "entmed/qsl.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace entmed {

QslResources qsl_resources(const HermitianOp& H, const DensityMatrix& rho0) {
  if (H.dims() != rho0.dims()) throw std::invalid_argument("qsl_resources: operator and state spaces differ");
  const CMat& h = H.data();
  const CMat& r = rho0.data();
  QslResources out;
  out.ground = hermitian_eig(h).values.minCoeff();
  const double e1 = (h * r).trace().real();
  const double e2 = (h * h * r).trace().real();
  out.mean = e1 - out.ground;
  out.spread = std::sqrt(std::max(0.0, e2 - e1 * e1));
  return out;
}

QslBound qsl_time_bound(const DensityMatrix& rho0, const DensityMatrix& rhot, const QslResources& res) {
  QslBound b;
  b.res = res;
  b.theta = bures_angle(rho0, rhot);
  if (res.min() <= 0.0) {
    b.infinite = true;
    b.gamma = std::numeric_limits<double>::infinity();
  } else {
    b.gamma = b.theta / res.min();
  }
  return b;
}

QslBound qsl_time_bound(const DensityMatrix& rho0, const DensityMatrix& rhot, const HermitianOp& H) {
  return qsl_time_bound(rho0, rhot, qsl_resources(H, rho0));
}

double direct_bound(int d) {
  if (d < 1) throw std::invalid_argument("direct_bound: dimension must be positive");
  return std::atan(std::sqrt(static_cast<double>(d - 1)));
}

ResourceCheck resource_equality_check(const HermitianOp& H, const DensityMatrix& rho0, double tol) {
  const QslResources r = qsl_resources(H, rho0);
  return {std::abs(r.min() - 1.0) <= tol, r.mean, r.spread};
}

double charge(const DensityMatrix& rho) {
  if (rho.space().size() != 2) throw std::invalid_argument("charge: need a two-party state");
  const auto& d = rho.dims();
  if (d[0] < 2 || d[1] < 2) throw std::invalid_argument("charge: each party needs an excited level");
  const int idx = 1 * d[1] + 1;
  return std::sqrt(std::max(0.0, rho.data()(idx, idx).real()));
}

}  // namespace entmed
