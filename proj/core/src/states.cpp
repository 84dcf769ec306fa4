#include "gqd/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gqd/complex_matrix.hpp"

namespace gqd {

namespace {

// Composite index of level pair |a b| under the {|2>,|1>,|0>} -> {0,1,2}
// convention: level 2 sits at single-atom index 0, level 0 at index 2.
constexpr std::size_t pair_index(int level_a, int level_b) {
  return static_cast<std::size_t>(3 * (2 - level_a) + (2 - level_b));
}

ComplexMatrix bell_projector() {
  // (|22> + |11> + |00>)/sqrt(3), outer product
  const std::size_t support[3] = {pair_index(2, 2), pair_index(1, 1), pair_index(0, 0)};
  ComplexMatrix m(9);
  for (std::size_t i : support)
    for (std::size_t j : support) m(i, j) = Complex(1.0 / 3.0, 0.0);
  return m;
}

}  // namespace

DensityMatrix werner(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("werner: eta must lie in [0, 1]");
  ComplexMatrix m = bell_projector();
  m *= Complex(eta, 0.0);
  const Complex mixed((1.0 - eta) / 9.0, 0.0);
  for (std::size_t i = 0; i < 9; ++i) m(i, i) += mixed;
  return DensityMatrix(std::move(m));
}

DensityMatrix horodecki(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 5.0))
    throw std::invalid_argument("horodecki: alpha must lie in [0, 5]");
  ComplexMatrix m = bell_projector();
  m *= Complex(2.0 / 7.0, 0.0);
  const std::size_t plus_cycle[3] = {pair_index(0, 1), pair_index(1, 2), pair_index(2, 0)};
  const std::size_t minus_cycle[3] = {pair_index(1, 0), pair_index(2, 1), pair_index(0, 2)};
  for (std::size_t i : plus_cycle) m(i, i) += Complex(alpha / 21.0, 0.0);
  for (std::size_t i : minus_cycle) m(i, i) += Complex((5.0 - alpha) / 21.0, 0.0);
  return DensityMatrix(std::move(m));
}

DensityMatrix bell_qutrit() { return DensityMatrix(bell_projector()); }

DensityMatrix ground_ground() {
  ComplexMatrix m(9);
  m(pair_index(0, 0), pair_index(0, 0)) = Complex(1.0, 0.0);
  return DensityMatrix(std::move(m));
}

DensityMatrix random_density(std::uint64_t seed, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("random_density: dim must be at least 2");

  // Box-Muller on explicitly constructed 53-bit uniforms. std::normal_distribution
  // is not pinned down by the standard, and reproducible seeds matter more here
  // than sampling speed.
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  auto gaussian_pair = [&]() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return Complex(radius * std::cos(angle), radius * std::sin(angle));
  };

  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = gaussian_pair();

  ComplexMatrix m = g * g.adjoint();
  const double tr = m.trace().real();
  m *= Complex(1.0 / tr, 0.0);
  return DensityMatrix(std::move(m));
}

DensityMatrix StateFamily::build() const {
  switch (kind) {
    case StateFamilyKind::Werner:
      return werner(parameter);
    case StateFamilyKind::Horodecki:
      return horodecki(parameter);
    case StateFamilyKind::BellQutrit:
      return bell_qutrit();
    case StateFamilyKind::GroundGround:
      return ground_ground();
    case StateFamilyKind::RandomGinibre:
      return random_density(seed, dim);
  }
  throw std::invalid_argument("StateFamily: unknown kind");
}

}  // namespace gqd
