#pragma once

#include <cstdint>
#include <cstddef>

#include "gqd/density_matrix.hpp"

namespace gqd {

// Named two-qutrit states plus seeded random states for property tests.
// Basis convention matches the reservoir module: indices {0,1,2} are levels
// {|2>, |1>, |0>}, composite index = 3*(index of atom A) + (index of atom B).

// (1 - eta) I/9 + eta |psi0><psi0| with |psi0> = (|22> + |11> + |00>)/sqrt(3).
// eta in [0, 1]; separable (PPT) for eta <= 1/4.
DensityMatrix werner(double eta);

// (2/7)|psi0><psi0| + (alpha/7) sigma_plus + ((5-alpha)/7) sigma_minus, where
// sigma_plus averages {|01>, |12>, |20>} and sigma_minus the transposed cycle
// {|10>, |21>, |02>}. alpha in [0, 5]; PPT-entangled for alpha in (3, 4].
DensityMatrix horodecki(double alpha);

// |psi0><psi0| itself, the eta = 1 endpoint.
DensityMatrix bell_qutrit();

// Both atoms in the ground level, the channel's fixed point.
DensityMatrix ground_ground();

// G G† / Tr(G G†) with G an i.i.d. standard complex Gaussian dim x dim
// matrix. Deterministic in the seed: entries come from an mt19937_64 stream
// through an explicit Box-Muller transform, so the same seed gives the same
// state on every platform. Full rank with probability 1.
DensityMatrix random_density(std::uint64_t seed, std::size_t dim);

// Tagged family selector used by the sweep layer.
enum class StateFamilyKind { Werner, Horodecki, BellQutrit, GroundGround, RandomGinibre };

struct StateFamily {
  StateFamilyKind kind = StateFamilyKind::Werner;
  double parameter = 0.0;       // eta or alpha; ignored otherwise
  std::uint64_t seed = 0;       // RandomGinibre only
  std::size_t dim = 9;          // RandomGinibre only

  DensityMatrix build() const;
};

}  // namespace gqd
