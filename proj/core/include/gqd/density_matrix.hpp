#pragma once

#include <cstddef>

#include "gqd/complex_matrix.hpp"

namespace gqd {

inline constexpr double kStateTol = 1e-10;

// Validated quantum state. Construction checks finiteness, Hermiticity,
// unit trace and positive semidefiniteness, each within tol.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat, double tol = kStateTol);

  const ComplexMatrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }
  double tol() const { return tol_; }

 private:
  ComplexMatrix mat_;
  double tol_;
};

double purity(const DensityMatrix& rho);

// Half the trace norm of the difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace gqd
