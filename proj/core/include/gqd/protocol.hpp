#pragma once

#include "gqd/complex_matrix.hpp"
#include "gqd/density_matrix.hpp"
#include "gqd/reservoir.hpp"

namespace gqd {

// Pre-decay weak measurement strengths. Strength 1 would project out the
// excited levels entirely, so the open interval is enforced.
struct WeakMeasurementParams {
  double p = 0.0;  // strength on |2>
  double q = 0.0;  // strength on |1>

  void validate() const;
};

// Post-decay reversal strengths. Unlike the weak measurement these may reach
// exactly 1: at a decay zero crossing the matched strength 1 - (1-p)|G|^2
// rounds to 1, and the reversal operator is still well defined there.
struct ReversalParams {
  double p_r = 0.0;
  double q_r = 0.0;

  void validate() const;
};

// Reversal strengths matched to the decay so that the surviving branch of the
// channel is proportional to the identity: p_r = 1 - (1-p)|G+|^2 and
// q_r = 1 - (1-q)|G-|^2.
ReversalParams optimal_reversal(double p, double q, const DecaySnapshot& snap);

// The measurement operators themselves, single-atom (3x3).
// The reversal operator deliberately crosses the strengths: its (0,0) entry
// carries q_r and its (1,1) entry carries p_r. That crossing is what makes
// the matched strengths cancel the |G| factors.
ComplexMatrix weak_measurement_operator(const WeakMeasurementParams& w);
ComplexMatrix reversal_operator(const ReversalParams& rv);
ComplexMatrix phase_removal_operator(const DecaySnapshot& snap);

// Maps on 3x3 (one atom) or 9x9 (two atoms, operators applied as two-fold
// tensor powers). The measurement maps return unnormalized matrices; the
// trace they lose is the post-selection cost. phase_removal is unitary,
// V^dag rho V, undoing the arg of the decay amplitudes on the coherences.
ComplexMatrix weak_measure(const ComplexMatrix& rho, const WeakMeasurementParams& w);
ComplexMatrix reversal_measure(const ComplexMatrix& rho, const ReversalParams& rv);
ComplexMatrix phase_removal(const ComplexMatrix& rho, const DecaySnapshot& snap);

struct ProtocolResult {
  DensityMatrix state;        // normalized post-selected state
  double norm = 0.0;          // normalization factor divided out at the end
  double success_prob = 0.0;  // trace before normalizing; equals norm
};

// Full protection pipeline: rotate to the eigenmode frame, weak-measure,
// apply the damping channel, reverse with matched strengths, strip decay
// phases, rotate back, normalize once.
//
// Requires gamma1 == gamma2 (the matched-reversal construction assumes it).
// Throws invariant_violation when the post-selection probability underflows
// to the point where no state can be recovered.
ProtocolResult protect_single(const DensityMatrix& rho0, const ReservoirParams& r,
                              const WeakMeasurementParams& w, double t);
ProtocolResult protect_two_qutrit(const DensityMatrix& rho0, const ReservoirParams& r,
                                  const WeakMeasurementParams& w, double t);

// Direct assembly of the protected two-qutrit families, used to cross-check
// the operator pipeline. Both assume gamma1 == gamma2, and they match the
// pipeline exactly when the residual weights (1-p)(1-|G+|^2) and
// (1-q)(1-|G-|^2) coincide, which covers every p = q, theta = 0 point.
ProtocolResult closed_form_werner(double eta, const ReservoirParams& r,
                                  const WeakMeasurementParams& w, double t);
ProtocolResult closed_form_horodecki(double alpha, const ReservoirParams& r,
                                     const WeakMeasurementParams& w, double t);

}  // namespace gqd
