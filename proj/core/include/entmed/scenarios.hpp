#pragma once

#include <string>
#include <vector>

#include "entmed/langevin.hpp"

namespace entmed {

namespace constants {
inline constexpr double G = 6.674300000e-11;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double h = 6.626070150e-34;
inline constexpr double kB = 1.380649000e-23;
inline constexpr double c = 2.997924580e8;
inline constexpr double eps0 = 8.854187813e-12;
inline constexpr double eV = 1.602176634e-19;
inline constexpr double osmium_density = 22590.0;  // kg/m^3
inline constexpr double air_molecule_mass = 0.5e-25;
}  // namespace constants

// ----------------------------------------------------------------- gravity

struct GravityConfig {
  double m = 1.0;          // kg
  double rho = constants::osmium_density;
  double R = 0.0;          // m
  double omega = 1.0;      // rad/s
  double L = 0.0;          // centre separation, m
  double gamma = 0.0;      // rad/s
  double nbar = 0.0;
  double s_A = 0.0;
  double s_B = 0.0;

  // sphere of mass m and density rho at separation L = ratio * R
  static GravityConfig spheres(double m, double omega, double L_over_R, double rho = constants::osmium_density);
  void validate() const;
};

double sphere_radius(double m, double rho);
double eta_g(const GravityConfig& cfg);
// drive constant nu = G m^2 / sqrt(hbar m omega L^4), in units of omega
double gravity_drive(const GravityConfig& cfg);
double position_scale(const GravityConfig& cfg);  // sqrt(hbar / (m omega)), metres per unit X

// time unit 1/omega
DriftModel trapped_drift(const GravityConfig& cfg);
DriftModel trapped_drift_eta(double eta, double gamma_over_omega, double nbar, double s_A, double s_B);
DriftModel released_drift(const GravityConfig& cfg);

double released_sigma(const GravityConfig& cfg, double t_s);
double released_entanglement_analytic(const GravityConfig& cfg, double t_s);
double released_entanglement_from_sigma(double sigma, double nbar);

enum class Geometry { spheres, unequal_spheres, rod_sphere };
struct GeometryParams {
  double m = 1.0;           // spheres: mass
  double omega = 1.0;       // spheres: frequency; otherwise omega_A
  double L = 0.0;           // spheres: separation (0 selects the Osmium L = 2.1 R form)
  double alpha = 1.0;       // unequal spheres: R_B / R_A
  double varsigma = 1.14;   // rod: 2L/d
};
double rod_shape_factor(double varsigma);
double interaction_rate(Geometry g, const GeometryParams& p);

double casimir_gravity_ratio(const GravityConfig& cfg, double f0 = 1.0);

struct DecoherenceTimes {
  double tau_ph;
  double tau_am;
};
DecoherenceTimes decoherence_times(const GravityConfig& cfg, double dx, double T_env, double gas_density);
// time-averaged position width sqrt(V_XX) in metres over a trajectory
double average_width(const CmTrajectory& traj, int mode, double x_scale);

// displacement of each mass towards the other, metres
double classical_trajectory(const GravityConfig& cfg, double t_s);

// ----------------------------------------------------------------- bacteria

struct BacteriaConfig {
  double L = 518e-9;
  double n_r = 1.33;
  double R1 = 0.5;
  double R2 = 1.0;
  int M = 4;
  double Omega_I = 2.5e15;
  double Omega_II = 4.1e15;
  double gamma_I = 130e-3 * constants::eV / (4.0 * constants::h);
  double gamma_II = 600e-3 * constants::eV / (4.0 * constants::h);
  double G_I = 3.9e13;
  double G_II = 6.0e13;  // negative selects 1.53 G_I
  std::vector<double> P;       // per-mode laser power (W); empty selects 50 mW each
  std::vector<double> Lambda;  // per-mode laser frequency; empty selects omega_m

  void validate() const;
};

inline constexpr double kDipoleRatio = 1.53;

double cavity_mode_frequency(const BacteriaConfig& cfg, int m);
double cavity_finesse(const BacteriaConfig& cfg);
double cavity_decay(const BacteriaConfig& cfg);
// time unit 1/omega_1; modes (1..M, I, II)
DriftModel bacteria_drift(const BacteriaConfig& cfg, bool rotating_wave = false);
std::vector<double> photon_numbers(const RMat& V, const RVec& u, int modes);

// ----------------------------------------------------------------- optomechanics

struct OptomechConfig {
  double m_C = 145e-12;  // kg
  double omega_C = 2.0 * 3.14159265358979323846 * 947e3;
  double gamma_C = 2.0 * 3.14159265358979323846 * 140.0;
  double T = 0.3;
  double l_A = 25e-3;
  double l_B = 25e-3;
  double finesse = 1.4e4;
  double P_A = 0.1;
  double P_B = 0.04;
  double wavelength = 1064e-9;
  double Delta_A = 2.0 * 3.14159265358979323846 * 947e3;
  double Delta_B = -2.0 * 3.14159265358979323846 * 947e3;
  bool effective_detuning = true;  // false: Delta_J are the bare detunings Delta_0J
  bool couple_B = true;

  void validate() const;
};

struct OptomechSteady {
  double kappa_A, kappa_B;
  double E_A, E_B;
  double G0_A, G0_B;
  double alpha_A, alpha_B;
  double X_Cs;
  double Delta_A, Delta_B;     // effective
  double Delta0_A, Delta0_B;   // bare
  double G_A, G_B;
  double nbar;
  int iterations;
};

OptomechSteady optomech_fixed_point(const OptomechConfig& cfg);
// time unit 1/omega_C; modes (A, B, C)
DriftModel optomech_drift(const OptomechConfig& cfg);

}  // namespace entmed
