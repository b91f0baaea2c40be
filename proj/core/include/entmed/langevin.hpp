#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "entmed/gaussian.hpp"

namespace entmed {

// p(t) = constant + sum_k (cos_amp_k cos(w_k t) + sin_amp_k sin(w_k t))
struct Drive {
  struct Tone {
    RVec cos_amp;
    RVec sin_amp;
    double freq = 0.0;
  };
  RVec constant;
  std::vector<Tone> tones;

  RVec at(double t, int dim) const;
  bool is_zero() const;
};

struct DriftModel {
  RMat K;
  RMat D;
  Drive drive;
  RMat V0;
  RVec u0;
  double time_unit_s = 1.0;  // seconds per unit of model time

  int dim() const { return static_cast<int>(K.rows()); }
  void validate() const;
};

struct Stability {
  std::vector<std::complex<double>> eigenvalues;
  double max_real = 0.0;
  bool stable = false;
};

class UnstableModel : public std::runtime_error {
 public:
  UnstableModel(const std::string& what, std::vector<std::complex<double>> spectrum)
      : std::runtime_error(what), spectrum_(std::move(spectrum)) {}
  const std::vector<std::complex<double>>& spectrum() const { return spectrum_; }

 private:
  std::vector<std::complex<double>> spectrum_;
};

struct PropagationOptions {
  double dt = 0.0;            // 0 selects 0.02 / max rate
  bool local_frame = false;   // integrate in the frame of the traceless local blocks of K
  bool converge = true;       // halve dt until records agree
  double conv_tol = 1e-8;
  int max_halvings = 4;
  double psd_tol = 1e-7;     // relative to the largest eigenvalue when that exceeds 1
};

struct CmTrajectory {
  std::vector<double> times;
  std::vector<RMat> V;      // lab frame, or local frame when frame is non-empty
  std::vector<RMat> frame;  // local symplectic maps S(t) with V_lab = S V S^T
  double dt_used = 0.0;

  RMat lab(std::size_t k) const;
};

struct MeanTrajectory {
  std::vector<double> times;
  std::vector<RVec> u;
  double dt_used = 0.0;
};

Stability stability(const RMat& K);
Stability stability(const DriftModel& m);

double langevin_rate(const RMat& K);
double auto_dt(const DriftModel& m);

// traceless 2x2 diagonal blocks of K
RMat local_generator(const RMat& K);
RMat local_frame_map(const RMat& K0, double t);

CmTrajectory propagate_cm(const DriftModel& m, const std::vector<double>& grid, const PropagationOptions& opts = {});
MeanTrajectory propagate_means(const DriftModel& m, const std::vector<double>& grid,
                               const PropagationOptions& opts = {});
// quadrature of the convolution integral by adaptive Simpson
MeanTrajectory propagate_means_convolution(const DriftModel& m, const std::vector<double>& grid,
                                           double rel_tol = 1e-9);
// W V0 W^T + int_0^t W(s) D W(s)^T ds via a block exponential
RMat cm_closed_form(const DriftModel& m, double t);

RMat steady_state(const DriftModel& m);
double lyapunov_residual(const RMat& K, const RMat& D, const RMat& V);

std::vector<double> linspace(double a, double b, int n);

}  // namespace entmed
