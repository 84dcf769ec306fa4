#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "gqd/complex_matrix.hpp"
#include "gqd/density_matrix.hpp"

namespace gqd {

// V-type three-level atom in a Lorentzian reservoir at resonance.
//
// Basis convention used throughout: the matrix indices {0, 1, 2} label the
// levels {|2>, |1>, |0>}, i.e. the two excited states come first and the
// ground state is index 2. The (2,2) entry of a single-atom state is the
// ground population.
//
// Rates are expressed in units of a reference decay rate and times in units
// of its inverse, so gamma1 = 1 is the usual normalization.
struct ReservoirParams {
  double gamma1 = 1.0;  // decay rate of |2>
  double gamma2 = 1.0;  // decay rate of |1>
  double lambda = 1.0;  // spectral width; small lambda = strong memory
  double theta = 0.0;   // dipole alignment in [-1, 1]; 0 decouples the levels

  void validate() const;
};

// Derived quantities of the two dissipative eigenmodes. d_plus/d_minus are
// kept complex: they turn purely imaginary in the strong-memory regime
// lambda < 2*gamma_pm, which is where the decay oscillates.
struct StructureConstants {
  double h = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  Complex d_plus{0.0, 0.0};
  Complex d_minus{0.0, 0.0};
};

StructureConstants structure_constants(const ReservoirParams& r);

// Amplitude decay of the two eigenmodes at one instant. Both stay inside the
// closed unit disk; the phases are 0 at t = 0.
struct DecaySnapshot {
  double t = 0.0;
  Complex g_plus{1.0, 0.0};
  Complex g_minus{1.0, 0.0};

  double abs_plus() const;
  double abs_minus() const;
  double phase_plus() const;
  double phase_minus() const;
};

// Closed-form decay amplitudes
//   G_pm(t) = exp(-lambda t/2) [cosh(d_pm t/2) + (lambda/d_pm) sinh(d_pm t/2)]
// with the removable d -> 0 singularity evaluated as exp(-lambda t/2)(1 + lambda t/2).
DecaySnapshot decay_functions(const ReservoirParams& r, double t);

// Independent reference for decay_functions: RK4 integration of the local
// second-order form of the memory-kernel equation,
//   x'' + lambda x' + (lambda gamma_pm / 2) x = 0,  x(0)=1, x'(0)=0,
// sampled on a uniform grid of `steps` intervals up to t_max. Intended for
// tests; pick steps large enough that halving the step leaves the result
// unchanged at the accuracy you assert.
std::vector<DecaySnapshot> decay_ode_oracle(const ReservoirParams& r, double t_max,
                                            std::size_t steps);

// Real rotation mixing the two excited levels into the dissipative
// eigenmodes; identity when the levels are already decoupled (theta = 0 with
// equal rates).
ComplexMatrix diagonalizing_unitary(const ReservoirParams& r);

// Amplitude-damping Kraus triple in the eigenmode frame. The first operator
// damps the excited amplitudes by G_pm, the other two feed the lost
// population into the ground level.
std::array<ComplexMatrix, 3> kraus_operators(const DecaySnapshot& snap);

// One atom, and two identical atoms in independent reservoirs.
DensityMatrix apply_channel_single(const DensityMatrix& rho0, const ReservoirParams& r,
                                   double t);
DensityMatrix apply_channel_two_qutrit(const DensityMatrix& rho0, const ReservoirParams& r,
                                       double t);

}  // namespace gqd
