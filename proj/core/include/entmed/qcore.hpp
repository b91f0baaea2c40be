#pragma once

#include <string>
#include <vector>

#include "entmed/linalg.hpp"

namespace entmed {

inline constexpr double kHermTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kKetNormTol = 1e-12;

// Labeled tensor factorization shared by states and operators.
struct Space {
  std::vector<int> dims;
  std::vector<std::string> labels;

  Space() = default;
  explicit Space(std::vector<int> d);
  Space(std::vector<int> d, std::vector<std::string> l);

  int total() const;
  int size() const { return static_cast<int>(dims.size()); }
  int index_of(const std::string& label) const;
  bool has(const std::string& label) const;
  std::vector<int> indices_of(const std::vector<std::string>& labels) const;
  Space restricted(const std::vector<int>& keep) const;
  bool operator==(const Space& o) const { return dims == o.dims && labels == o.labels; }
};

Space concat(const Space& a, const Space& b);

class Ket {
 public:
  Ket(Space space, CVec amplitudes);
  static Ket basis(Space space, const std::vector<int>& digits);
  static Ket normalized(Space space, CVec amplitudes);

  const Space& space() const { return space_; }
  const CVec& amplitudes() const { return amp_; }
  const std::vector<int>& dims() const { return space_.dims; }

 private:
  Space space_;
  CVec amp_;
};

class DensityMatrix {
 public:
  DensityMatrix(Space space, CMat data);
  explicit DensityMatrix(const Ket& ket);
  // skips validation; intended for integrator internals
  static DensityMatrix unchecked(Space space, CMat data);
  static DensityMatrix maximally_mixed(Space space);

  const Space& space() const { return space_; }
  const CMat& data() const { return data_; }
  const std::vector<int>& dims() const { return space_.dims; }
  const std::vector<std::string>& labels() const { return space_.labels; }
  int dim() const { return static_cast<int>(data_.rows()); }

 private:
  DensityMatrix() = default;
  Space space_;
  CMat data_;
};

class HermitianOp {
 public:
  HermitianOp(Space space, CMat data);
  static HermitianOp zero(Space space);

  const Space& space() const { return space_; }
  const CMat& data() const { return data_; }
  const std::vector<int>& dims() const { return space_.dims; }

  HermitianOp operator+(const HermitianOp& o) const;
  HermitianOp operator*(double s) const;

 private:
  Space space_;
  CMat data_;
};

// H acting on one labeled factor, identity elsewhere
HermitianOp local_op(const Space& space, const std::string& label, const CMat& local);

Ket tensor(const Ket& a, const Ket& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
HermitianOp tensor(const HermitianOp& a, const HermitianOp& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);
CMat partial_transpose(const DensityMatrix& rho, const std::vector<std::string>& party);

double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const CMat& rho);
double purity(const DensityMatrix& rho);
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity(const CMat& rho, const CMat& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma);

// validation helpers shared by other modules
void require_density(const CMat& m, const char* who);

}  // namespace entmed
