#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace entmed {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kEigClip = 1e-10;

struct HermitianEig {
  RVec values;   // ascending
  CMat vectors;  // columns
};

HermitianEig hermitian_eig(const CMat& m);

// eigenvalues with [-kEigClip, 0) mapped to 0
RVec clipped_eigenvalues(const CMat& m);

// f applied to the spectrum of a Hermitian matrix
CMat hermitian_function(const CMat& m, const std::function<double(double)>& f);
CMat sqrtm_psd(const CMat& m);

CMat kron(const CMat& a, const CMat& b);
CVec kron(const CVec& a, const CVec& b);
RMat kron(const RMat& a, const RMat& b);

CMat expm(const CMat& m);
RMat expm(const RMat& m);

// reduced matrix over the subsystems listed in keep (order of dims preserved)
CMat partial_trace_raw(const CMat& m, const std::vector<int>& dims, const std::vector<int>& keep);
CMat partial_transpose_raw(const CMat& m, const std::vector<int>& dims, const std::vector<int>& which);

// reorders tensor factors; order[k] is the old position of new factor k
CMat permute_subsystems_raw(const CMat& m, const std::vector<int>& dims, const std::vector<int>& order);

// local operator on subsystem `site` inside the full product space
CMat embed(const std::vector<int>& dims, int site, const CMat& local);

double hermiticity_error(const CMat& m);
CMat hermitize(const CMat& m);
double trace_norm_hermitian(const CMat& m);

namespace ops {
CMat identity(int d);
CMat sigma_x();
CMat sigma_y();
CMat sigma_z();
CMat sigma_plus();
CMat sigma_minus();
CMat annihilation(int n_max);
CMat number(int n_max);
}  // namespace ops

}  // namespace entmed
