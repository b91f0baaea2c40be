#pragma once

#include <random>
#include <vector>

#include "entmed/linalg.hpp"

namespace entmed {

inline constexpr double kCmSymTol = 1e-10;
inline constexpr double kPhysTol = 1e-8;

// quadratures u = (X_1, P_1, ..., X_n, P_n), X = (a + a^dag)/sqrt(2), vacuum V = 1/2
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(RMat v, RVec means = RVec());
  static CovarianceMatrix unchecked(RMat v, RVec means = RVec());

  int n_modes() const { return static_cast<int>(v_.rows() / 2); }
  const RMat& V() const { return v_; }
  const RVec& means() const { return means_; }

 private:
  CovarianceMatrix() = default;
  RMat v_;
  RVec means_;
};

RMat symplectic_form(int n_modes);
RVec symplectic_eigenvalues(const RMat& v);
bool is_physical(const RMat& v, double tol = kPhysTol);

enum class GaussianKind { coherent, thermal, squeezed_thermal };
CovarianceMatrix state_cm(GaussianKind kind, double nbar = 0.0, double s = 0.0, double theta = 0.0);
CovarianceMatrix direct_sum(const std::vector<CovarianceMatrix>& parts);
CovarianceMatrix two_mode_squeezed_vacuum(double s);

// sub-CM over the listed modes, in the given order
RMat select_modes(const RMat& v, const std::vector<int>& modes);
// momentum sign flip on the listed modes
RMat partial_transpose_cm(const RMat& v, const std::vector<int>& modes);

double min_pt_symplectic_eigenvalue(const RMat& v, const std::vector<int>& left, const std::vector<int>& right);
double log_negativity_cv(const RMat& v, const std::vector<int>& left, const std::vector<int>& right);
double log_negativity_two_mode(const RMat& v4);
double min_pt_symplectic_two_mode(const RMat& v4);

// von Neumann entropy in bits
double gaussian_entropy(const RMat& v);

// V = S diag(nu) S^T with random symplectic S and nu >= 1/2
RMat random_symplectic(int n_modes, std::mt19937_64& rng, double scale = 0.5);
RMat random_physical_cm(int n_modes, std::mt19937_64& rng, double max_excess = 2.0);

}  // namespace entmed
