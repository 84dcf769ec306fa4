#include "gqd/discord.hpp"

#include <cmath>
#include <stdexcept>

#include "gqd/errors.hpp"
#include "gqd/linalg.hpp"

namespace gqd {

GeneratorSet gellmann(std::size_t m) {
  if (m < 2) throw std::invalid_argument("gellmann: dimension must be at least 2");
  GeneratorSet g;
  g.dim = m;
  g.matrices.reserve(m * m - 1);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k) {
      ComplexMatrix sym(m);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      g.matrices.push_back(sym);
    }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k) {
      ComplexMatrix asym(m);
      asym(j, k) = Complex(0.0, -1.0);
      asym(k, j) = Complex(0.0, 1.0);
      g.matrices.push_back(asym);
    }
  for (std::size_t l = 1; l < m; ++l) {
    const double f = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    ComplexMatrix diag(m);
    for (std::size_t j = 0; j < l; ++j) diag(j, j) = f;
    diag(l, l) = -f * static_cast<double>(l);
    g.matrices.push_back(diag);
  }
  return g;
}

// Tr(rho (a (x) b)) without forming the Kronecker product.
static Complex tensor_expectation(const ComplexMatrix& rho, const ComplexMatrix& a,
                                  const ComplexMatrix& b) {
  const std::size_t m = a.dim(), n = b.dim();
  Complex sum = 0.0;
  for (std::size_t j1 = 0; j1 < m; ++j1)
    for (std::size_t i1 = 0; i1 < m; ++i1) {
      const Complex av = a(j1, i1);
      if (av == 0.0) continue;
      for (std::size_t j2 = 0; j2 < n; ++j2)
        for (std::size_t i2 = 0; i2 < n; ++i2) {
          const Complex bv = b(j2, i2);
          if (bv == 0.0) continue;
          sum += rho(i1 * n + i2, j1 * n + j2) * av * bv;
        }
    }
  return sum;
}

static double real_checked(Complex v, const char* what) {
  if (std::abs(v.imag()) >= 1e-12)
    throw invariant_violation(std::string(what) + ": expectation value not real");
  return v.real();
}

BlochDecomposition bloch_decompose(const DensityMatrix& rho, std::size_t m, std::size_t n) {
  if (rho.dim() != m * n)
    throw std::invalid_argument("bloch_decompose: state dimension must be m*n");
  const GeneratorSet ga = gellmann(m);
  const GeneratorSet gb = gellmann(n);
  const ComplexMatrix ia = ComplexMatrix::identity(m);
  const ComplexMatrix ib = ComplexMatrix::identity(n);

  BlochDecomposition out;
  out.dim_a = m;
  out.dim_b = n;
  out.x.resize(m * m - 1);
  out.y.resize(n * n - 1);
  out.t.resize((m * m - 1) * (n * n - 1));

  for (std::size_t i = 0; i < out.x.size(); ++i)
    out.x[i] = 0.5 * m * real_checked(tensor_expectation(rho.mat(), ga.matrices[i], ib), "bloch x");
  for (std::size_t j = 0; j < out.y.size(); ++j)
    out.y[j] = 0.5 * n * real_checked(tensor_expectation(rho.mat(), ia, gb.matrices[j]), "bloch y");
  for (std::size_t i = 0; i < out.x.size(); ++i)
    for (std::size_t j = 0; j < out.y.size(); ++j)
      out.t[i * out.y.size() + j] =
          0.25 * m * n *
          real_checked(tensor_expectation(rho.mat(), ga.matrices[i], gb.matrices[j]), "bloch t");
  return out;
}

ComplexMatrix bloch_reconstruct(const BlochDecomposition& b) {
  const std::size_t m = b.dim_a, n = b.dim_b;
  const GeneratorSet ga = gellmann(m);
  const GeneratorSet gb = gellmann(n);
  const ComplexMatrix ia = ComplexMatrix::identity(m);
  const ComplexMatrix ib = ComplexMatrix::identity(n);

  ComplexMatrix acc = ComplexMatrix::identity(m * n);
  for (std::size_t i = 0; i < b.x.size(); ++i)
    acc += b.x[i] * tensor(ga.matrices[i], ib);
  for (std::size_t j = 0; j < b.y.size(); ++j)
    acc += b.y[j] * tensor(ia, gb.matrices[j]);
  for (std::size_t i = 0; i < b.x.size(); ++i)
    for (std::size_t j = 0; j < b.y.size(); ++j)
      acc += b.t_at(i, j) * tensor(ga.matrices[i], gb.matrices[j]);
  acc *= 1.0 / static_cast<double>(m * n);
  return acc;
}

CorrelationMatrixC correlation_matrix(const DensityMatrix& rho, std::size_t m, std::size_t n) {
  const BlochDecomposition b = bloch_decompose(rho, m, n);
  const double dm = static_cast<double>(m), dn = static_cast<double>(n);

  CorrelationMatrixC c;
  c.rows = m * m;
  c.cols = n * n;
  c.entries.assign(c.rows * c.cols, 0.0);

  c.at(0, 0) = 1.0 / std::sqrt(dm * dn);
  for (std::size_t j = 1; j < c.cols; ++j)
    c.at(0, j) = std::sqrt(2.0) / (dn * std::sqrt(dm)) * b.y[j - 1];
  for (std::size_t i = 1; i < c.rows; ++i)
    c.at(i, 0) = std::sqrt(2.0) / (dm * std::sqrt(dn)) * b.x[i - 1];
  for (std::size_t i = 1; i < c.rows; ++i)
    for (std::size_t j = 1; j < c.cols; ++j)
      c.at(i, j) = 2.0 / (dm * dn) * b.t_at(i - 1, j - 1);
  return c;
}

double gqd_lower_bound_raw(const DensityMatrix& rho, std::size_t m, std::size_t n) {
  const CorrelationMatrixC c = correlation_matrix(rho, m, n);
  ComplexMatrix cct(c.rows);
  for (std::size_t i = 0; i < c.rows; ++i)
    for (std::size_t k = 0; k < c.rows; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < c.cols; ++j) s += c.at(i, j) * c.at(k, j);
      cct(i, k) = s;
    }
  const auto mu = hermitian_eigenvalues(cct);
  double sum = 0.0;
  for (std::size_t i = m; i < mu.size(); ++i) sum += mu[i];
  return sum;
}

double gqd_lower_bound(const DensityMatrix& rho, std::size_t m, std::size_t n) {
  return std::max(0.0, gqd_lower_bound_raw(rho, m, n));
}

double gqd_two_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("gqd_two_qubit: state must be two-qubit");
  const GeneratorSet pauli = gellmann(2);
  const ComplexMatrix id2 = ComplexMatrix::identity(2);

  double x[3];
  double t[3][3];
  double norm_x2 = 0.0, norm_t2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    x[i] = real_checked(tensor_expectation(rho.mat(), pauli.matrices[i], id2), "pauli x");
    norm_x2 += x[i] * x[i];
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      t[i][j] = real_checked(tensor_expectation(rho.mat(), pauli.matrices[i], pauli.matrices[j]),
                             "pauli t");
      norm_t2 += t[i][j] * t[i][j];
    }

  ComplexMatrix k(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = x[i] * x[j];
      for (int l = 0; l < 3; ++l) s += t[i][l] * t[j][l];
      k(i, j) = s;
    }
  const double k_max = hermitian_eigenvalues(k).front();
  return 0.25 * (norm_x2 + norm_t2 - k_max);
}

}  // namespace gqd
