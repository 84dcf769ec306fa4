#pragma once

#include <cstddef>
#include <vector>

#include "gqd/complex_matrix.hpp"
#include "gqd/density_matrix.hpp"

namespace gqd {

// Traceless Hermitian generators of SU(m), normalized Tr(g_i g_j) = 2 d_ij.
// Fixed ordering: symmetric pair terms for j<k in lexicographic order, then
// the antisymmetric pair terms in the same order, then the m-1 diagonal
// generators. For m=2 this yields the Pauli triple (x, y, z).
struct GeneratorSet {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> matrices;
};

GeneratorSet gellmann(std::size_t m);

// Local Bloch vectors and correlation tensor of a bipartite state on
// C^m (x) C^n:
//   x_i = (m/2) Tr(rho g_i (x) I),  y_j = (n/2) Tr(rho I (x) g_j),
//   t_ij = (mn/4) Tr(rho g_i (x) g_j).
struct BlochDecomposition {
  std::size_t dim_a = 0, dim_b = 0;
  std::vector<double> x;  // m^2 - 1
  std::vector<double> y;  // n^2 - 1
  std::vector<double> t;  // (m^2-1) x (n^2-1), row-major

  double t_at(std::size_t i, std::size_t j) const { return t[i * (dim_b * dim_b - 1) + j]; }
};

BlochDecomposition bloch_decompose(const DensityMatrix& rho, std::size_t m, std::size_t n);

// Inverse of bloch_decompose; reproduces the state from (x, y, t).
ComplexMatrix bloch_reconstruct(const BlochDecomposition& b);

// Real m^2 x n^2 correlation matrix whose row/column 0 carry the identity
// components: c_00 = 1/sqrt(mn), first row ~ y, first column ~ x, and the
// remaining block ~ t. Equivalently c_ij = Tr(rho X_i (x) Y_j) over the
// orthonormal Hermitian bases {I/sqrt(m), g_i/sqrt(2)}.
struct CorrelationMatrixC {
  std::size_t rows = 0, cols = 0;
  std::vector<double> entries;  // row-major

  double& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

CorrelationMatrixC correlation_matrix(const DensityMatrix& rho, std::size_t m, std::size_t n);

// Observable-basis lower bound on geometric quantum discord: the sum of the
// m^2 - m smallest eigenvalues of C C^T. The raw variant can come out a hair
// negative from rounding on zero-discord states; the plain variant clamps
// at zero.
double gqd_lower_bound_raw(const DensityMatrix& rho, std::size_t m, std::size_t n);
double gqd_lower_bound(const DensityMatrix& rho, std::size_t m, std::size_t n);

// Exact geometric discord of a two-qubit state measured on side A:
// (|x|^2 + |T|^2 - k_max(x x^T + T T^T)) / 4 in the Pauli expansion.
double gqd_two_qubit(const DensityMatrix& rho);

}  // namespace gqd
