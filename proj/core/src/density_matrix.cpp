#include "gqd/density_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gqd/errors.hpp"
#include "gqd/linalg.hpp"

namespace gqd {

DensityMatrix::DensityMatrix(ComplexMatrix mat, double tol)
    : mat_(std::move(mat)), tol_(tol) {
  if (mat_.dim() == 0) throw std::invalid_argument("DensityMatrix: empty matrix");
  if (!(tol_ > 0.0)) throw std::invalid_argument("DensityMatrix: tolerance must be positive");
  if (!mat_.all_finite()) throw invariant_violation("DensityMatrix: non-finite entries");
  if (!mat_.is_hermitian(tol_)) throw invariant_violation("DensityMatrix: not Hermitian");
  const Complex tr = mat_.trace();
  if (std::abs(tr - 1.0) > tol_) throw invariant_violation("DensityMatrix: trace not 1");
  const auto eigs = hermitian_eigenvalues(mat_, tol_);
  if (eigs.back() < -tol_)
    throw invariant_violation("DensityMatrix: negative eigenvalue beyond tolerance");
}

double purity(const DensityMatrix& rho) {
  return (rho.mat() * rho.mat()).trace().real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const auto eigs = hermitian_eigenvalues(a.mat() - b.mat(), 1e-9);
  double sum = 0.0;
  for (double e : eigs) sum += std::abs(e);
  return 0.5 * sum;
}

}  // namespace gqd
