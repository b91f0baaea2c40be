#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entmed/qcore.hpp"

namespace entmed {

// X:Y (symmetric) or X|Y (asymmetric, Y is the conditioning or measured side)
struct Partition {
  std::vector<std::string> left;
  std::vector<std::string> right;
  bool asymmetric = false;

  Partition(std::vector<std::string> l, std::vector<std::string> r, bool asym = false);
  std::vector<std::string> all() const;
  void check(const Space& space) const;
  std::string name() const;
};

struct MeasurementBasis {
  std::string label;
  std::vector<CVec> vectors;

  MeasurementBasis(std::string l, std::vector<CVec> v);
  static MeasurementBasis computational(const std::string& l, int d);
  static MeasurementBasis from_unitary(const std::string& l, const CMat& u);
  std::vector<CMat> projectors() const;
};

// non-selective von Neumann measurement on the basis subsystem
DensityMatrix dephase(const DensityMatrix& rho, const MeasurementBasis& basis);

double negativity(const DensityMatrix& rho, const Partition& p);
double log_negativity(const DensityMatrix& rho, const Partition& p);
double entropy_of_entanglement(const Ket& psi, const Partition& p);
double mutual_information(const DensityMatrix& rho, const Partition& p);
// S_{X|Y} = S_XY - S_Y
double conditional_entropy(const DensityMatrix& rho, const std::vector<std::string>& x,
                           const std::vector<std::string>& y);
double classical_correlation_lb(const DensityMatrix& rho, const MeasurementBasis& bx, const MeasurementBasis& by);

// S(rho||sigma) in bits, +inf when supp(rho) is not inside supp(sigma)
double relative_entropy(const CMat& rho, const CMat& sigma);

struct ReeOptions {
  int restarts = 16;
  int terms = 0;  // 0 selects (d_X d_Y)^2
  std::uint64_t seed = 20240611;
  int max_iter = 4000;
  double grad_tol = 1e-5;
};

struct ReeResult {
  double value = 0.0;
  bool converged = false;
  int converged_restarts = 0;
  std::vector<double> restart_values;
  CMat sigma;  // best separable state, factors ordered left then right
};

ReeResult ree_numeric(const DensityMatrix& rho, const Partition& p, const ReeOptions& opts = {});

struct RedOptions {
  int grid_theta = 12;
  int grid_phi = 24;
  std::uint64_t seed = 20240611;
  int max_iter = 4000;
  double simplex_tol = 1e-9;
};

struct RedResult {
  double value = 0.0;
  bool converged = false;
  std::vector<CVec> basis;
  int evaluations = 0;
};

RedResult red_discord(const DensityMatrix& rho, const std::string& measured, const RedOptions& opts = {});

struct FlagBranch {
  double p;
  DensityMatrix state;  // remaining subsystems
  CVec flag;
};

// QC decomposition sum_c p_c rho_c (x) |c><c| on the flag subsystem; throws if rho is not QC
std::vector<FlagBranch> flags_decompose(const DensityMatrix& rho, const std::string& flag_label, double tol = 1e-9);

}  // namespace entmed
