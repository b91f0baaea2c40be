#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entmed/qcore.hpp"

namespace entmed {

// hbar = 1; times are dimensionless (T = omega t or g t)
class UnitaryPropagator {
 public:
  explicit UnitaryPropagator(const HermitianOp& h);
  CMat U(double t) const;
  Ket apply(const Ket& psi, double t) const;
  DensityMatrix apply(const DensityMatrix& rho, double t) const;

 private:
  Space space_;
  HermitianEig eig_;
};

Ket evolve_unitary(const Ket& psi, const HermitianOp& h, double t);
DensityMatrix evolve_unitary(const DensityMatrix& rho, const HermitianOp& h, double t);

Ket trotter_evolve(const Ket& psi, const HermitianOp& h1, const HermitianOp& h2, double t, int n);
DensityMatrix trotter_evolve(const DensityMatrix& rho, const HermitianOp& h1, const HermitianOp& h2, double t, int n);

struct JumpOp {
  std::string label;
  CMat op;  // full-space operator, rate absorbed
};

class LindbladModel {
 public:
  explicit LindbladModel(HermitianOp h);
  // full-space jump operator; must act on `label` only
  void add_jump(const std::string& label, const CMat& full_op);
  void add_local_jump(const std::string& label, const CMat& local_op);

  const HermitianOp& H() const { return h_; }
  const std::vector<JumpOp>& jumps() const { return jumps_; }
  CMat generator_heff() const;

 private:
  HermitianOp h_;
  std::vector<JumpOp> jumps_;
};

struct EvolutionSpec {
  double t_max = 0.0;
  double dt = 0.0;  // 0 selects min(1e-3, 0.01 / ||H_eff||)
  std::vector<double> record_times;
};

std::vector<DensityMatrix> lindblad_evolve(const DensityMatrix& rho0, const LindbladModel& model,
                                           const EvolutionSpec& spec);

struct Scenario {
  std::string name;
  HermitianOp H;
  HermitianOp H_AC;  // part coupling A and the mediator (local terms included)
  HermitianOp H_BC;
  DensityMatrix rho0;
  std::optional<Ket> psi0;
  bool exploratory = false;
};

// names: instrumental_discord, localisation, ghz_saturation, direct_xx, charging_free, charging_int,
// jc_fields, dipole_fields, three_qubit_exchange
Scenario scenario_hamiltonian(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> scenario_names();

int default_fock_cutoff(int total_excitations);
// doubles the cutoff until every observable moves by less than tol; returns the accepted cutoff
int converge_fock_cutoff(int start, const std::function<std::vector<double>(int)>& observables, double tol = 1e-6,
                         int max_cutoff = 64);

// <k|D(alpha)|n> on a truncated Fock space
CMat displacement_matrix(cplx alpha, int n_max);

// analytic two-qubit effective state of the dipole-dipole model, basis (++, +-, -+, --)
DensityMatrix dipole_effective_state(int m, int n, double gt);
// columns |D_+^(n)>, |D_-^(n)> on a truncated Fock space
CMat dipole_branch_vectors(int n, double gt, int n_max);
// effective state mapped into Fock(A) x Fock(B)
CMat dipole_effective_embedded(int m, int n, double gt, int n_max);

}  // namespace entmed
