#include "entmed/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace entmed {

RVec Drive::at(double t, int dim) const {
  RVec p = constant.size() ? constant : RVec::Zero(dim);
  for (const auto& tone : tones) {
    if (tone.cos_amp.size()) p += tone.cos_amp * std::cos(tone.freq * t);
    if (tone.sin_amp.size()) p += tone.sin_amp * std::sin(tone.freq * t);
  }
  return p;
}

bool Drive::is_zero() const {
  if (constant.size() && constant.cwiseAbs().maxCoeff() > 0.0) return false;
  for (const auto& tone : tones) {
    if (tone.cos_amp.size() && tone.cos_amp.cwiseAbs().maxCoeff() > 0.0) return false;
    if (tone.sin_amp.size() && tone.sin_amp.cwiseAbs().maxCoeff() > 0.0) return false;
  }
  return true;
}

void DriftModel::validate() const {
  const auto n = K.rows();
  if (n == 0 || K.cols() != n || n % 2) throw std::invalid_argument("DriftModel: K must be a non-empty even square matrix");
  if (D.rows() != n || D.cols() != n) throw std::invalid_argument("DriftModel: D has wrong shape");
  if (V0.rows() != n || V0.cols() != n) throw std::invalid_argument("DriftModel: V0 has wrong shape");
  if (u0.size() != n) throw std::invalid_argument("DriftModel: u0 has wrong length");
  if (drive.constant.size() && drive.constant.size() != n) throw std::invalid_argument("DriftModel: drive has wrong length");
  for (const auto& tone : drive.tones)
    if ((tone.cos_amp.size() && tone.cos_amp.size() != n) || (tone.sin_amp.size() && tone.sin_amp.size() != n))
      throw std::invalid_argument("DriftModel: drive tone has wrong length");
  const double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
  if ((D - D.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) throw std::invalid_argument("DriftModel: D not symmetric");
  Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (D + D.transpose()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) throw std::invalid_argument("DriftModel: D not positive semidefinite");
}

Stability stability(const RMat& K) {
  Eigen::EigenSolver<RMat> es(K, false);
  Stability s;
  s.max_real = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    s.eigenvalues.push_back(es.eigenvalues()[i]);
    s.max_real = std::max(s.max_real, es.eigenvalues()[i].real());
  }
  s.stable = s.max_real < 0.0;
  return s;
}

Stability stability(const DriftModel& m) { return stability(m.K); }

double langevin_rate(const RMat& K) { return K.cwiseAbs().maxCoeff(); }

double auto_dt(const DriftModel& m) {
  double r = langevin_rate(m.K);
  return r > 0.0 ? 0.02 / r : 1.0;
}

RMat local_generator(const RMat& K) {
  const auto n = K.rows() / 2;
  RMat k0 = RMat::Zero(K.rows(), K.cols());
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Matrix2d b = K.block<2, 2>(2 * j, 2 * j);
    b -= 0.5 * b.trace() * Eigen::Matrix2d::Identity();
    k0.block<2, 2>(2 * j, 2 * j) = b;
  }
  return k0;
}

RMat local_frame_map(const RMat& K0, double t) {
  const auto n = K0.rows() / 2;
  RMat s = RMat::Zero(K0.rows(), K0.cols());
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Matrix2d b = K0.block<2, 2>(2 * j, 2 * j);
    const double delta = -b.determinant();
    double c, f;
    if (delta > 0.0) {
      double r = std::sqrt(delta);
      c = std::cosh(r * t);
      f = std::sinh(r * t) / r;
    } else if (delta < 0.0) {
      double r = std::sqrt(-delta);
      c = std::cos(r * t);
      f = std::sin(r * t) / r;
    } else {
      c = 1.0;
      f = t;
    }
    s.block<2, 2>(2 * j, 2 * j) = c * Eigen::Matrix2d::Identity() + f * b;
  }
  return s;
}

RMat CmTrajectory::lab(std::size_t k) const {
  if (frame.empty()) return V.at(k);
  return frame.at(k) * V.at(k) * frame.at(k).transpose();
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g;
  if (n == 1) return {a};
  for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / (n - 1));
  return g;
}

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("propagate: empty time grid");
  if (grid.front() < 0.0) throw std::invalid_argument("propagate: negative time in grid");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("propagate: time grid not strictly increasing");
}

// generator in the chosen frame: K_t = S^-1 K1 S, D_t = S^-1 D S^-T
struct Frame {
  bool active;
  RMat K, K0, K1, D;

  Frame(const DriftModel& m, bool local) : active(local), K(m.K), D(m.D) {
    K0 = local ? local_generator(m.K) : RMat::Zero(m.K.rows(), m.K.cols());
    K1 = m.K - K0;
  }
  RMat S(double t) const { return local_frame_map(K0, t); }
  void at(double t, RMat& kt, RMat& dt, RMat* sinv_out = nullptr) const {
    if (!active) {
      kt = K;
      dt = D;
      if (sinv_out) *sinv_out = RMat::Identity(K.rows(), K.cols());
      return;
    }
    RMat s = S(t), si = S(-t);
    kt = si * K1 * s;
    dt = si * D * si.transpose();
    if (sinv_out) *sinv_out = si;
  }
  double rate(const std::vector<double>& grid) const {
    if (!active) return langevin_rate(K);
    double r = langevin_rate(K1);
    RMat kt, dt;
    for (double t : grid) {
      at(t, kt, dt);
      r = std::max(r, langevin_rate(kt));
    }
    return r;
  }
};

int steps_for(double span, double dt) { return std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9))); }

CmTrajectory integrate_cm(const DriftModel& m, const Frame& fr, const std::vector<double>& grid, double dt,
                          double psd_tol) {
  CmTrajectory tr;
  tr.times = grid;
  tr.dt_used = dt;
  RMat v = m.V0;
  double t = 0.0;
  RMat k1, d1, k2, d2, k3, d3;
  auto rhs = [](const RMat& k, const RMat& d, const RMat& x) -> RMat { return k * x + x * k.transpose() + d; };
  for (double tr_t : grid) {
    double span = tr_t - t;
    if (span > 0.0) {
      int n = steps_for(span, dt);
      double h = span / n;
      for (int s = 0; s < n; ++s) {
        double t0 = t + s * h;
        fr.at(t0, k1, d1);
        fr.at(t0 + 0.5 * h, k2, d2);
        fr.at(t0 + h, k3, d3);
        RMat a = rhs(k1, d1, v);
        RMat b = rhs(k2, d2, v + 0.5 * h * a);
        RMat c = rhs(k2, d2, v + 0.5 * h * b);
        RMat e = rhs(k3, d3, v + h * c);
        v += (h / 6.0) * (a + 2.0 * b + 2.0 * c + e);
        v = 0.5 * (v + v.transpose()).eval();
      }
      t = tr_t;
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(v, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -psd_tol * scale) {
      std::ostringstream os;
      os << "propagate_cm: covariance matrix lost positivity at t=" << tr_t << " (min eigenvalue "
         << es.eigenvalues().minCoeff() << "); integrator failure";
      throw std::runtime_error(os.str());
    }
    tr.V.push_back(v);
    if (fr.active) tr.frame.push_back(fr.S(tr_t));
  }
  return tr;
}

MeanTrajectory integrate_means(const DriftModel& m, const Frame& fr, const std::vector<double>& grid, double dt) {
  MeanTrajectory tr;
  tr.times = grid;
  tr.dt_used = dt;
  const int n = m.dim();
  RVec u = m.u0;
  double t = 0.0;
  RMat k1, d1, k2, d2, k3, d3, s1, s2, s3;
  for (double tr_t : grid) {
    double span = tr_t - t;
    if (span > 0.0) {
      int ns = steps_for(span, dt);
      double h = span / ns;
      for (int s = 0; s < ns; ++s) {
        double t0 = t + s * h;
        fr.at(t0, k1, d1, &s1);
        fr.at(t0 + 0.5 * h, k2, d2, &s2);
        fr.at(t0 + h, k3, d3, &s3);
        RVec p1 = s1 * m.drive.at(t0, n), p2 = s2 * m.drive.at(t0 + 0.5 * h, n), p3 = s3 * m.drive.at(t0 + h, n);
        RVec a = k1 * u + p1;
        RVec b = k2 * (u + 0.5 * h * a) + p2;
        RVec c = k2 * (u + 0.5 * h * b) + p2;
        RVec e = k3 * (u + h * c) + p3;
        u += (h / 6.0) * (a + 2.0 * b + 2.0 * c + e);
      }
      t = tr_t;
    }
    tr.u.push_back(fr.active ? RVec(fr.S(tr_t) * u) : u);
  }
  return tr;
}

double record_gap(const std::vector<RMat>& a, const std::vector<RMat>& b) {
  double g = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    double scale = std::max(1.0, b[k].cwiseAbs().maxCoeff());
    g = std::max(g, (a[k] - b[k]).cwiseAbs().maxCoeff() / scale);
  }
  return g;
}

}  // namespace

CmTrajectory propagate_cm(const DriftModel& m, const std::vector<double>& grid, const PropagationOptions& opts) {
  m.validate();
  check_grid(grid);
  Frame fr(m, opts.local_frame);
  double rate = fr.rate(grid);
  double dt = opts.dt > 0.0 ? opts.dt : (rate > 0.0 ? 0.02 / rate : grid.back() + 1.0);
  CmTrajectory cur = integrate_cm(m, fr, grid, dt, opts.psd_tol);
  if (!opts.converge) return cur;
  for (int h = 0; h < opts.max_halvings; ++h) {
    dt *= 0.5;
    CmTrajectory fine = integrate_cm(m, fr, grid, dt, opts.psd_tol);
    double gap = record_gap(cur.V, fine.V);
    cur = std::move(fine);
    if (gap < opts.conv_tol) return cur;
  }
  return cur;
}

MeanTrajectory propagate_means(const DriftModel& m, const std::vector<double>& grid, const PropagationOptions& opts) {
  m.validate();
  check_grid(grid);
  Frame fr(m, opts.local_frame);
  double rate = fr.rate(grid);
  for (const auto& tone : m.drive.tones) rate = std::max(rate, std::abs(tone.freq));
  double dt = opts.dt > 0.0 ? opts.dt : (rate > 0.0 ? 0.02 / rate : grid.back() + 1.0);
  MeanTrajectory cur = integrate_means(m, fr, grid, dt);
  if (!opts.converge) return cur;
  for (int h = 0; h < opts.max_halvings; ++h) {
    dt *= 0.5;
    MeanTrajectory fine = integrate_means(m, fr, grid, dt);
    double gap = 0.0;
    for (size_t k = 0; k < grid.size(); ++k)
      gap = std::max(gap, (fine.u[k] - cur.u[k]).cwiseAbs().maxCoeff() / std::max(1.0, fine.u[k].cwiseAbs().maxCoeff()));
    cur = std::move(fine);
    if (gap < opts.conv_tol) return cur;
  }
  return cur;
}

MeanTrajectory propagate_means_convolution(const DriftModel& m, const std::vector<double>& grid, double rel_tol) {
  m.validate();
  check_grid(grid);
  const int n = m.dim();
  MeanTrajectory tr;
  tr.times = grid;
  for (double t : grid) {
    auto f = [&](double s) -> RVec { return expm(RMat(m.K * (t - s))) * m.drive.at(s, n); };
    std::function<RVec(double, double, const RVec&, const RVec&, const RVec&, const RVec&, int)> simpson;
    simpson = [&](double a, double b, const RVec& fa, const RVec& fm, const RVec& fb, const RVec& whole,
                  int depth) -> RVec {
      double c = 0.5 * (a + b);
      RVec flm = f(0.5 * (a + c)), frm = f(0.5 * (c + b));
      RVec left = (c - a) / 6.0 * (fa + 4.0 * flm + fm);
      RVec right = (b - c) / 6.0 * (fm + 4.0 * frm + fb);
      RVec sum = left + right;
      double err = (sum - whole).norm();
      if (depth <= 0 || err <= 15.0 * rel_tol * std::max(sum.norm(), 1e-300)) return sum + (sum - whole) / 15.0;
      return simpson(a, c, fa, flm, fm, left, depth - 1) + simpson(c, b, fm, frm, fb, right, depth - 1);
    };
    RVec integral = RVec::Zero(n);
    if (t > 0.0 && !m.drive.is_zero()) {
      const int pieces = 64;
      for (int k = 0; k < pieces; ++k) {
        double a = t * k / pieces, b = t * (k + 1) / pieces;
        RVec fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
        integral += simpson(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), 40);
      }
    }
    tr.u.push_back(expm(RMat(m.K * t)) * m.u0 + integral);
  }
  return tr;
}

RMat cm_closed_form(const DriftModel& m, double t) {
  const auto n = m.K.rows();
  RMat c = RMat::Zero(2 * n, 2 * n);
  c.topLeftCorner(n, n) = -m.K;
  c.topRightCorner(n, n) = m.D;
  c.bottomRightCorner(n, n) = m.K.transpose();
  RMat e = expm(RMat(c * t));
  RMat w = e.bottomRightCorner(n, n).transpose();
  RMat integral = w * e.topRightCorner(n, n);
  RMat v = w * m.V0 * w.transpose() + integral;
  return 0.5 * (v + v.transpose());
}

double lyapunov_residual(const RMat& K, const RMat& D, const RMat& V) {
  return (K * V + V * K.transpose() + D).cwiseAbs().maxCoeff();
}

RMat steady_state(const DriftModel& m) {
  m.validate();
  Stability st = stability(m.K);
  if (!st.stable) {
    std::ostringstream os;
    os << "steady_state: drift matrix is unstable (max Re lambda = " << st.max_real << ")";
    throw UnstableModel(os.str(), st.eigenvalues);
  }
  const auto n = m.K.rows();
  const double scale = langevin_rate(m.K);
  RMat k = m.K / scale, d = m.D / scale;
  RMat id = RMat::Identity(n, n);
  RMat big = kron(id, k) + kron(k, id);
  Eigen::PartialPivLU<RMat> lu(big);
  RVec rhs = -Eigen::Map<const RVec>(d.data(), n * n);
  RVec x = lu.solve(rhs);
  for (int it = 0; it < 3; ++it) x += lu.solve(RVec(rhs - big * x));
  RMat v = Eigen::Map<RMat>(x.data(), n, n);
  v = 0.5 * (v + v.transpose()).eval();
  double res = lyapunov_residual(k, d, v);
  if (res > 1e-10) {
    std::ostringstream os;
    os << "steady_state: Lyapunov residual " << res << " above 1e-10";
    throw std::runtime_error(os.str());
  }
  return v;
}

}  // namespace entmed
