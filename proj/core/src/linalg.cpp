#include "gqd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gqd/errors.hpp"

namespace gqd {

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i1 = 0; i1 < na; ++i1)
    for (std::size_t j1 = 0; j1 < na; ++j1) {
      const Complex aij = a(i1, j1);
      if (aij == 0.0) continue;
      for (std::size_t i2 = 0; i2 < nb; ++i2)
        for (std::size_t j2 = 0; j2 < nb; ++j2)
          out(i1 * nb + i2, j1 * nb + j2) = aij * b(i2, j2);
    }
  return out;
}

static void require_bipartite(const ComplexMatrix& rho, std::size_t m, std::size_t n) {
  if (m == 0 || n == 0 || rho.dim() != m * n)
    throw std::invalid_argument("bipartite operator must have dimension m*n");
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t m, std::size_t n,
                            Subsystem keep) {
  require_bipartite(rho, m, n);
  if (keep == Subsystem::A) {
    ComplexMatrix out(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < n; ++k) out(i, j) += rho(i * n + k, j * n + k);
    return out;
  }
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k) out(i, j) += rho(k * n + i, k * n + j);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t m, std::size_t n,
                                Subsystem side) {
  require_bipartite(rho, m, n);
  ComplexMatrix out(m * n);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      for (std::size_t j1 = 0; j1 < m; ++j1)
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          if (side == Subsystem::B)
            out(i1 * n + i2, j1 * n + j2) = rho(i1 * n + j2, j1 * n + i2);
          else
            out(i1 * n + i2, j1 * n + j2) = rho(j1 * n + i2, i1 * n + j2);
        }
  return out;
}

static double offdiag_norm(const ComplexMatrix& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j)
      if (i != j) s += std::norm(w(i, j));
  return std::sqrt(s);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, double hermiticity_tol) {
  const std::size_t n = h.dim();
  if (n == 0) throw std::invalid_argument("hermitian_eigenvalues: empty matrix");
  if (!h.all_finite())
    throw std::invalid_argument("hermitian_eigenvalues: non-finite entries");
  if (!h.is_hermitian(hermiticity_tol))
    throw std::invalid_argument("hermitian_eigenvalues: matrix not Hermitian within tolerance");

  // Symmetrize away representation noise so the working copy is exactly
  // Hermitian before the rotations start.
  ComplexMatrix w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      w(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

  constexpr int kMaxSweeps = 50;
  constexpr double kOffTarget = 1e-14;

  if (n > 1) {
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (offdiag_norm(w) < kOffTarget) {
        converged = true;
        break;
      }
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
          const Complex b = w(p, q);
          const double absb = std::abs(b);
          if (absb == 0.0) continue;

          // A unimodular phase makes the 2x2 pivot block real, then a plain
          // Givens rotation annihilates it. t solves t^2 - 2*tau*t - 1 = 0;
          // the smaller root keeps the rotation angle below 45 degrees.
          const Complex phase = b / absb;
          const double a = w(p, p).real();
          const double d = w(q, q).real();
          const double tau = (d - a) / (2.0 * absb);
          const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::hypot(1.0, tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;

          const Complex sp = s * std::conj(phase);
          for (std::size_t k = 0; k < n; ++k) {
            const Complex wkp = w(k, p), wkq = w(k, q);
            w(k, p) = c * wkp + sp * wkq;
            w(k, q) = -s * wkp + c * std::conj(phase) * wkq;
          }
          for (std::size_t k = 0; k < n; ++k) {
            const Complex wpk = w(p, k), wqk = w(q, k);
            w(p, k) = c * wpk + s * phase * wqk;
            w(q, k) = -s * wpk + c * phase * wqk;
          }
        }
    }
    if (!converged && offdiag_norm(w) >= kOffTarget)
      throw invariant_violation("hermitian_eigenvalues: Jacobi sweep budget exhausted");
  }

  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = w(i, i).real();
  std::sort(eigs.begin(), eigs.end(), std::greater<double>());
  return eigs;
}

}  // namespace gqd
