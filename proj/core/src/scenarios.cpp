#include "entmed/scenarios.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace entmed {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRodPrefactor = 2.18e-7;  // L = 1.1 R_A, R_B = 0.1 R_A, Osmium

double osmium_sphere_rate(double omega) {
  return 8.0 * kPi * constants::G * constants::osmium_density / (3.0 * std::pow(2.1, 3) * omega);
}

RMat squeezed_pair_cm(double nbar, double s_A, double s_B) {
  return direct_sum({state_cm(GaussianKind::squeezed_thermal, nbar, s_A),
                     state_cm(GaussianKind::squeezed_thermal, nbar, s_B)})
      .V();
}

}  // namespace

double sphere_radius(double m, double rho) {
  if (m <= 0.0 || rho <= 0.0) throw std::invalid_argument("sphere_radius: mass and density must be positive");
  return std::cbrt(3.0 * m / (4.0 * kPi * rho));
}

GravityConfig GravityConfig::spheres(double m, double omega, double L_over_R, double rho) {
  GravityConfig c;
  c.m = m;
  c.rho = rho;
  c.R = sphere_radius(m, rho);
  c.omega = omega;
  c.L = L_over_R * c.R;
  c.validate();
  return c;
}

void GravityConfig::validate() const {
  if (!(m > 0.0) || !(omega > 0.0) || !(L > 0.0))
    throw std::invalid_argument("GravityConfig: m, omega and L must be positive");
  if (gamma < 0.0 || nbar < 0.0) throw std::invalid_argument("GravityConfig: negative damping or occupation");
  if (R > 0.0) {
    if (L <= 2.0 * R) throw std::invalid_argument("GravityConfig: spheres overlap (L <= 2R)");
    if (rho > 0.0) {
      const double m_R = 4.0 / 3.0 * kPi * R * R * R * rho;
      if (std::abs(m_R - m) > 1e-9 * m)
        throw std::invalid_argument("GravityConfig: mass, radius and density are inconsistent");
    }
  }
}

double eta_g(const GravityConfig& cfg) {
  return 2.0 * constants::G * cfg.m / (cfg.omega * cfg.omega * cfg.L * cfg.L * cfg.L);
}

double gravity_drive(const GravityConfig& cfg) {
  const double nu = constants::G * cfg.m * cfg.m / std::sqrt(constants::hbar * cfg.m * cfg.omega * std::pow(cfg.L, 4));
  return nu / cfg.omega;
}

double position_scale(const GravityConfig& cfg) { return std::sqrt(constants::hbar / (cfg.m * cfg.omega)); }

DriftModel trapped_drift_eta(double eta, double g, double nbar, double s_A, double s_B) {
  DriftModel dm;
  dm.K = RMat::Zero(4, 4);
  dm.K << 0, 1, 0, 0,
          -(1 - eta), -g, -eta, 0,
          0, 0, 0, 1,
          -eta, 0, -(1 - eta), -g;
  dm.D = RMat::Zero(4, 4);
  dm.D(1, 1) = dm.D(3, 3) = g * (2.0 * nbar + 1.0);
  dm.V0 = squeezed_pair_cm(nbar, s_A, s_B);
  dm.u0 = RVec::Zero(4);
  dm.drive.constant = RVec::Zero(4);
  return dm;
}

DriftModel trapped_drift(const GravityConfig& cfg) {
  cfg.validate();
  DriftModel dm = trapped_drift_eta(eta_g(cfg), cfg.gamma / cfg.omega, cfg.nbar, cfg.s_A, cfg.s_B);
  const double nu = gravity_drive(cfg);
  dm.drive.constant << 0, nu, 0, -nu;
  dm.time_unit_s = 1.0 / cfg.omega;
  return dm;
}

DriftModel released_drift(const GravityConfig& cfg) {
  cfg.validate();
  const double eta = eta_g(cfg);
  DriftModel dm;
  dm.K = RMat::Zero(4, 4);
  dm.K << 0, 1, 0, 0,
          eta, 0, -eta, 0,
          0, 0, 0, 1,
          -eta, 0, eta, 0;
  dm.D = RMat::Zero(4, 4);
  dm.V0 = squeezed_pair_cm(cfg.nbar, cfg.s_A, cfg.s_B);
  dm.u0 = RVec::Zero(4);
  const double nu = gravity_drive(cfg);
  dm.drive.constant = RVec::Zero(4);
  dm.drive.constant << 0, nu, 0, -nu;
  dm.time_unit_s = 1.0 / cfg.omega;
  return dm;
}

double released_sigma(const GravityConfig& cfg, double t) {
  const double gm = constants::G * cfg.m;
  return 4.0 * gm * gm * cfg.omega * cfg.omega * std::pow(t, 6) / (9.0 * std::pow(cfg.L, 6));
}

double released_entanglement_from_sigma(double sigma, double nbar) {
  if (sigma < 0.0) throw std::invalid_argument("released_entanglement: negative sigma");
  // 1 + 2s - 2 sqrt(s^2 + s) = (sqrt(1 + s) - sqrt(s))^2
  const double e_gnd = -std::log2(std::sqrt(1.0 + sigma) - std::sqrt(sigma));
  return std::max(0.0, e_gnd - std::log2(2.0 * nbar + 1.0));
}

double released_entanglement_analytic(const GravityConfig& cfg, double t) {
  return released_entanglement_from_sigma(released_sigma(cfg, t), cfg.nbar);
}

double rod_shape_factor(double vs) {
  if (vs <= 0.0) throw std::invalid_argument("rod_shape_factor: need 2L/d > 0");
  const double s2 = vs * vs;
  const double q = std::sqrt(1.0 + s2);
  const double corr = s2 * ((s2 - 1.0) * q - 1.0) / ((1.0 + q) * (1.0 + q) * std::pow(1.0 + s2, 1.5));
  return std::pow(vs, 0.25) * (1.0 - corr);
}

double interaction_rate(Geometry g, const GeometryParams& p) {
  if (!(p.omega > 0.0)) throw std::invalid_argument("interaction_rate: omega must be positive");
  switch (g) {
    case Geometry::spheres:
      if (p.L > 0.0) return 2.0 * constants::G * p.m / (p.omega * p.L * p.L * p.L);
      return osmium_sphere_rate(p.omega);
    case Geometry::unequal_spheres:
      if (p.alpha < 0.0) throw std::invalid_argument("interaction_rate: alpha must be non-negative");
      return osmium_sphere_rate(p.omega) * std::pow(p.alpha, 2.25);
    case Geometry::rod_sphere:
      return kRodPrefactor * rod_shape_factor(p.varsigma) / p.omega;
  }
  throw std::invalid_argument("interaction_rate: unknown geometry");
}

double casimir_gravity_ratio(const GravityConfig& cfg, double f0) {
  const double R = cfg.R > 0.0 ? cfg.R : sphere_radius(cfg.m, cfg.rho);
  const double gap = cfg.L - 2.0 * R;
  if (gap <= 0.0) throw std::invalid_argument("casimir_gravity_ratio: spheres overlap");
  const double C = f0 * std::pow(kPi, 3) * constants::hbar * constants::c * R / 1440.0;
  return 3.0 * C * std::pow(cfg.L, 3) / (constants::G * cfg.m * cfg.m * std::pow(gap, 4));
}

DecoherenceTimes decoherence_times(const GravityConfig& cfg, double dx, double T, double n) {
  if (dx <= 0.0 || T <= 0.0 || n < 0.0) throw std::invalid_argument("decoherence_times: bad arguments");
  const double R = cfg.R > 0.0 ? cfg.R : sphere_radius(cfg.m, cfg.rho);
  const double lam_ph = 1e36 * std::pow(R, 6) * std::pow(T, 9);
  const double lam_am = 8.0 / (3.0 * constants::hbar * constants::hbar) * n *
                        std::sqrt(2.0 * kPi * constants::air_molecule_mass) * R * R *
                        std::pow(constants::kB * T, 1.5);
  const double dx2 = dx * dx;
  return {1.0 / (lam_ph * dx2), n > 0.0 ? 1.0 / (lam_am * dx2) : INFINITY};
}

double average_width(const CmTrajectory& traj, int mode, double x_scale) {
  if (traj.V.empty()) throw std::invalid_argument("average_width: empty trajectory");
  double acc = 0.0;
  for (std::size_t k = 0; k < traj.V.size(); ++k) acc += std::sqrt(traj.lab(k)(2 * mode, 2 * mode));
  return x_scale * acc / static_cast<double>(traj.V.size());
}

double classical_trajectory(const GravityConfig& cfg, double t) {
  if (t < 0.0) throw std::invalid_argument("classical_trajectory: negative time");
  const double L = cfg.L;
  const double lhs = t * std::sqrt(2.0 * constants::G * cfg.m / L);
  auto rhs = [L](double x) {
    const double w = x * (L - 2.0 * x);
    // pi/2 - atan(theta) written without cancellation
    return std::sqrt(w) + L / (2.0 * std::sqrt(2.0)) * std::atan2(std::sqrt(8.0 * w), L - 4.0 * x);
  };
  if (lhs == 0.0) return 0.0;
  if (lhs >= L * kPi / (2.0 * std::sqrt(2.0))) throw std::domain_error("classical_trajectory: masses have collided");
  double lo = 0.0, hi = 0.5 * L;
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rhs(mid) < lhs ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ----------------------------------------------------------------- bacteria

void BacteriaConfig::validate() const {
  if (M < 2) throw std::invalid_argument("BacteriaConfig: need at least two cavity modes");
  if (!(L > 0.0) || !(n_r > 0.0) || !(Omega_I > 0.0) || !(Omega_II > 0.0) || !(gamma_I > 0.0) || !(gamma_II > 0.0))
    throw std::invalid_argument("BacteriaConfig: rates and lengths must be positive");
  if (!(R1 > 0.0 && R1 <= 1.0 && R2 > 0.0 && R2 <= 1.0) || R1 * R2 >= 1.0)
    throw std::invalid_argument("BacteriaConfig: reflectivities must lie in (0, 1] with R1 R2 < 1");
  if (G_I < 0.0) throw std::invalid_argument("BacteriaConfig: negative coupling");
  if (!P.empty() && static_cast<int>(P.size()) != M) throw std::invalid_argument("BacteriaConfig: P needs M entries");
  if (!Lambda.empty() && static_cast<int>(Lambda.size()) != M)
    throw std::invalid_argument("BacteriaConfig: Lambda needs M entries");
  for (double p : P)
    if (p < 0.0) throw std::invalid_argument("BacteriaConfig: negative laser power");
}

double cavity_mode_frequency(const BacteriaConfig& cfg, int m) { return m * kPi * constants::c / (cfg.n_r * cfg.L); }

double cavity_finesse(const BacteriaConfig& cfg) { return -2.0 * kPi / std::log(cfg.R1 * cfg.R2); }

double cavity_decay(const BacteriaConfig& cfg) {
  return kPi * constants::c / (2.0 * cavity_finesse(cfg) * cfg.n_r * cfg.L);
}

DriftModel bacteria_drift(const BacteriaConfig& cfg, bool rwa) {
  cfg.validate();
  const int M = cfg.M;
  const int dim = 2 * M + 4;
  const double w1 = cavity_mode_frequency(cfg, 1);
  const double kappa = cavity_decay(cfg);
  const double G[2] = {cfg.G_I, cfg.G_II < 0.0 ? kDipoleRatio * cfg.G_I : cfg.G_II};
  const double Om[2] = {cfg.Omega_I, cfg.Omega_II};
  const double ga[2] = {cfg.gamma_I, cfg.gamma_II};

  DriftModel dm;
  dm.K = RMat::Zero(dim, dim);
  dm.D = RMat::Zero(dim, dim);
  auto local = [&](int i, double decay, double freq) {
    dm.K(i, i) = dm.K(i + 1, i + 1) = -decay / w1;
    dm.K(i, i + 1) = freq / w1;
    dm.K(i + 1, i) = -freq / w1;
    dm.D(i, i) = dm.D(i + 1, i + 1) = decay / w1;
  };
  for (int m = 0; m < M; ++m) local(2 * m, kappa, cavity_mode_frequency(cfg, m + 1));
  for (int n = 0; n < 2; ++n) local(2 * M + 2 * n, ga[n], Om[n]);

  for (int m = 0; m < M; ++m) {
    for (int n = 0; n < 2; ++n) {
      const double g = (m + 1) * G[n] / w1;
      const int a = 2 * m, b = 2 * M + 2 * n;
      if (rwa) {
        dm.K(a, b + 1) = g;
        dm.K(a + 1, b) = -g;
        dm.K(b, a + 1) = g;
        dm.K(b + 1, a) = -g;
      } else {
        dm.K(a + 1, b) = -2.0 * g;
        dm.K(b + 1, a) = -2.0 * g;
      }
    }
  }

  dm.drive.constant = RVec::Zero(dim);
  for (int m = 0; m < M; ++m) {
    const double P = cfg.P.empty() ? 0.05 : cfg.P[m];
    const double lam = cfg.Lambda.empty() ? cavity_mode_frequency(cfg, m + 1) : cfg.Lambda[m];
    if (P == 0.0) continue;
    const double E = std::sqrt(2.0 * P * kappa / (constants::hbar * lam));
    Drive::Tone tone;
    tone.cos_amp = RVec::Zero(dim);
    tone.sin_amp = RVec::Zero(dim);
    tone.cos_amp[2 * m] = std::sqrt(2.0) * E / w1;
    tone.sin_amp[2 * m + 1] = -std::sqrt(2.0) * E / w1;
    tone.freq = lam / w1;
    dm.drive.tones.push_back(tone);
  }
  dm.V0 = 0.5 * RMat::Identity(dim, dim);
  dm.u0 = RVec::Zero(dim);
  dm.time_unit_s = 1.0 / w1;
  return dm;
}

std::vector<double> photon_numbers(const RMat& V, const RVec& u, int modes) {
  if (V.rows() < 2 * modes) throw std::invalid_argument("photon_numbers: covariance matrix too small");
  std::vector<double> out(modes);
  for (int k = 0; k < modes; ++k) {
    double s = V(2 * k, 2 * k) + V(2 * k + 1, 2 * k + 1) - 1.0;
    if (u.size() >= 2 * k + 2) s += u[2 * k] * u[2 * k] + u[2 * k + 1] * u[2 * k + 1];
    out[k] = 0.5 * s;
  }
  return out;
}

// ----------------------------------------------------------------- optomechanics

void OptomechConfig::validate() const {
  if (!(m_C > 0.0) || !(omega_C > 0.0) || !(gamma_C > 0.0) || !(T > 0.0) || !(l_A > 0.0) || !(l_B > 0.0) ||
      !(finesse > 0.0) || !(wavelength > 0.0))
    throw std::invalid_argument("OptomechConfig: physical parameters must be positive");
  if (P_A < 0.0 || P_B < 0.0) throw std::invalid_argument("OptomechConfig: negative laser power");
}

OptomechSteady optomech_fixed_point(const OptomechConfig& cfg) {
  cfg.validate();
  OptomechSteady s{};
  const double w_l = 2.0 * kPi * constants::c / cfg.wavelength;
  const double x0 = std::sqrt(constants::hbar / (cfg.m_C * cfg.omega_C));
  s.kappa_A = kPi * constants::c / (2.0 * cfg.finesse * cfg.l_A);
  s.kappa_B = kPi * constants::c / (2.0 * cfg.finesse * cfg.l_B);
  s.E_A = std::sqrt(2.0 * cfg.P_A * s.kappa_A / (constants::hbar * w_l));
  s.E_B = std::sqrt(2.0 * cfg.P_B * s.kappa_B / (constants::hbar * w_l));
  s.G0_A = w_l / cfg.l_A * x0;
  s.G0_B = cfg.couple_B ? w_l / cfg.l_B * x0 : 0.0;
  s.nbar = 1.0 / std::expm1(constants::hbar * cfg.omega_C / (constants::kB * cfg.T));

  auto amplitudes = [&](double dA, double dB) {
    s.alpha_A = s.E_A / std::hypot(s.kappa_A, dA);
    s.alpha_B = s.E_B / std::hypot(s.kappa_B, dB);
    return (s.G0_A * s.alpha_A * s.alpha_A - s.G0_B * s.alpha_B * s.alpha_B) / cfg.omega_C;
  };

  if (cfg.effective_detuning) {
    s.Delta_A = cfg.Delta_A;
    s.Delta_B = cfg.Delta_B;
    s.X_Cs = amplitudes(s.Delta_A, s.Delta_B);
    s.Delta0_A = s.Delta_A + s.G0_A * s.X_Cs;
    s.Delta0_B = s.Delta_B - s.G0_B * s.X_Cs;
    s.iterations = 0;
  } else {
    s.Delta0_A = cfg.Delta_A;
    s.Delta0_B = cfg.Delta_B;
    double x = 0.0;
    std::vector<double> trace;
    bool done = false;
    for (int it = 1; it <= 10000; ++it) {
      const double xn = amplitudes(s.Delta0_A - s.G0_A * x, s.Delta0_B + s.G0_B * x);
      trace.push_back(xn);
      const bool conv = std::abs(xn - x) <= 1e-12 * std::max(std::abs(xn), 1e-300);
      x = xn;
      s.iterations = it;
      if (conv) {
        done = true;
        break;
      }
    }
    if (!done) {
      std::ostringstream os;
      os << "optomech_fixed_point: no convergence after 10000 iterations; last X_Cs iterates:";
      for (std::size_t k = trace.size() > 8 ? trace.size() - 8 : 0; k < trace.size(); ++k) os << ' ' << trace[k];
      throw std::runtime_error(os.str());
    }
    s.X_Cs = x;
    s.Delta_A = s.Delta0_A - s.G0_A * x;
    s.Delta_B = s.Delta0_B + s.G0_B * x;
    amplitudes(s.Delta_A, s.Delta_B);
  }
  s.G_A = std::sqrt(2.0) * s.G0_A * s.alpha_A;
  s.G_B = std::sqrt(2.0) * s.G0_B * s.alpha_B;
  return s;
}

DriftModel optomech_drift(const OptomechConfig& cfg) {
  const OptomechSteady s = optomech_fixed_point(cfg);
  const double w = cfg.omega_C;
  const double kA = s.kappa_A / w, kB = s.kappa_B / w, dA = s.Delta_A / w, dB = s.Delta_B / w;
  const double gA = s.G_A / w, gB = s.G_B / w, gC = cfg.gamma_C / w;
  DriftModel dm;
  dm.K = RMat::Zero(6, 6);
  dm.K << -kA, dA, 0, 0, 0, 0,
          -dA, -kA, 0, 0, gA, 0,
          0, 0, -kB, dB, 0, 0,
          0, 0, -dB, -kB, -gB, 0,
          0, 0, 0, 0, 0, 1,
          gA, 0, -gB, 0, -1, -gC;
  dm.D = RMat::Zero(6, 6);
  dm.D.diagonal() << kA, kA, kB, kB, 0, gC * (2.0 * s.nbar + 1.0);
  dm.V0 = RMat::Zero(6, 6);
  dm.V0.diagonal() << 0.5, 0.5, 0.5, 0.5, s.nbar + 0.5, s.nbar + 0.5;
  dm.u0 = RVec::Zero(6);
  dm.drive.constant = RVec::Zero(6);
  dm.time_unit_s = 1.0 / w;
  return dm;
}

}  // namespace entmed
