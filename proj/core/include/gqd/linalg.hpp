#pragma once

#include <cstddef>
#include <vector>

#include "gqd/complex_matrix.hpp"

namespace gqd {

enum class Subsystem { A, B };

// Kronecker product. Composite index convention is row-major: the pair
// (i1, i2) on C^m (x) C^n maps to i1*n + i2.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t m, std::size_t n,
                            Subsystem keep);

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t m, std::size_t n,
                                Subsystem side = Subsystem::B);

// Eigenvalues of a Hermitian matrix, sorted non-increasing. Cyclic complex
// Jacobi iteration; a sweep budget of 50 is treated as non-convergence and
// raised as invariant_violation. Input must be Hermitian within
// hermiticity_tol.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h,
                                          double hermiticity_tol = 1e-10);

}  // namespace gqd
