#include "gqd/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "gqd/errors.hpp"
#include "gqd/linalg.hpp"
#include "gqd/states.hpp"

namespace gqd {

namespace {

// Below this the post-selected state is pure noise: nothing meaningful
// survives division by the trace. Chosen far under any probability the
// protocol can produce with representable decay amplitudes, since success
// scales like the fourth power of |G| and must underflow before tripping it.
constexpr double kDegenerateTrace = 1e-300;

void require_equal_rates(const ReservoirParams& r, const char* who) {
  if (r.gamma1 != r.gamma2)
    throw std::invalid_argument(std::string(who) + ": requires gamma1 == gamma2");
}

// Applies a single-atom operator as op (dim 3) or op x op (dim 9).
ComplexMatrix apply_tensor_power(const ComplexMatrix& op, const ComplexMatrix& rho) {
  if (rho.dim() == 3) return congruence(op, rho);
  if (rho.dim() == 9) return congruence(tensor(op, op), rho);
  throw std::invalid_argument("protocol: matrix must be 3x3 or 9x9");
}

ProtocolResult finish(ComplexMatrix m, double tol, const char* who) {
  const double tr = m.trace().real();
  if (!(tr > kDegenerateTrace))
    throw invariant_violation(std::string(who) + ": post-selection probability vanished");
  m *= Complex(1.0 / tr, 0.0);
  return ProtocolResult{DensityMatrix(std::move(m), tol), tr, tr};
}

// The matched reversal operator in product form. Equivalent to
// reversal_operator(optimal_reversal(p, q, snap)), but sqrt(1 - p_r) is
// evaluated as sqrt(1-p)|G+| directly: rounding p_r = 1 - (1-p)|G+|^2
// through a double loses six digits once p_r is within 1e-10 of 1, which
// the strong-measurement long-time corner of the parameter space reaches.
ComplexMatrix matched_reversal_operator(const WeakMeasurementParams& w,
                                        const DecaySnapshot& snap) {
  const double a = std::sqrt(1.0 - w.q) * std::abs(snap.g_minus);
  const double b = std::sqrt(1.0 - w.p) * std::abs(snap.g_plus);
  return ComplexMatrix::diagonal({Complex(a, 0.0), Complex(b, 0.0), Complex(a * b, 0.0)});
}

ProtocolResult run_pipeline(const DensityMatrix& rho0, const ReservoirParams& r,
                            const WeakMeasurementParams& w, double t, const char* who) {
  require_equal_rates(r, who);
  w.validate();

  const ComplexMatrix u = diagonalizing_unitary(r);
  const DecaySnapshot snap = decay_functions(r, t);
  const auto kraus = kraus_operators(snap);

  ComplexMatrix m = apply_tensor_power(u, rho0.mat());
  m = weak_measure(m, w);

  ComplexMatrix evolved(rho0.dim());
  if (rho0.dim() == 3) {
    for (const auto& k : kraus) evolved += congruence(k, m);
  } else {
    for (const auto& ka : kraus)
      for (const auto& kb : kraus) evolved += congruence(tensor(ka, kb), m);
  }

  evolved = apply_tensor_power(matched_reversal_operator(w, snap), evolved);
  evolved = phase_removal(evolved, snap);
  evolved = apply_tensor_power(u.adjoint(), evolved);
  return finish(std::move(evolved), rho0.tol(), who);
}

// Shared residual weights of the protected channel. After the matched
// reversal each atom acts as rho -> R(rho + (u rho_22 + v rho_11)|0><0|)
// in level labels, with u, v the surviving excited-population leaks.
struct ResidualWeights {
  double u = 0.0;
  double v = 0.0;
  double big_r = 0.0;
  double s1 = 0.0;  // u^2 + v^2
  double s2 = 0.0;  // (u + v)^2
  double s3 = 0.0;  // u + v
  double s4 = 0.0;  // v - u
};

ResidualWeights residual_weights(const ReservoirParams& r, const WeakMeasurementParams& w,
                                 double t) {
  w.validate();
  const DecaySnapshot snap = decay_functions(r, t);
  const double gp2 = std::norm(snap.g_plus);
  const double gm2 = std::norm(snap.g_minus);
  ResidualWeights res;
  res.u = (1.0 - w.p) * (1.0 - gp2);
  res.v = (1.0 - w.q) * (1.0 - gm2);
  res.big_r = (1.0 - w.p) * (1.0 - w.q) * gp2 * gm2;
  res.s1 = res.u * res.u + res.v * res.v;
  res.s2 = (res.u + res.v) * (res.u + res.v);
  res.s3 = res.u + res.v;
  res.s4 = res.v - res.u;
  return res;
}

// Composite basis indices of the level pairs the closed forms touch.
constexpr std::size_t kGroundGround = 8;  // |00>
constexpr std::size_t kTwoZero = 2;       // |20>
constexpr std::size_t kZeroTwo = 6;       // |02>
constexpr std::size_t kOneZero = 5;       // |10>
constexpr std::size_t kZeroOne = 7;       // |01>

}  // namespace

void WeakMeasurementParams::validate() const {
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("WeakMeasurementParams: p must lie in [0, 1)");
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("WeakMeasurementParams: q must lie in [0, 1)");
}

void ReversalParams::validate() const {
  if (!(p_r >= 0.0 && p_r <= 1.0))
    throw std::invalid_argument("ReversalParams: p_r must lie in [0, 1]");
  if (!(q_r >= 0.0 && q_r <= 1.0))
    throw std::invalid_argument("ReversalParams: q_r must lie in [0, 1]");
}

ReversalParams optimal_reversal(double p, double q, const DecaySnapshot& snap) {
  WeakMeasurementParams{p, q}.validate();
  ReversalParams rv;
  rv.p_r = 1.0 - (1.0 - p) * std::norm(snap.g_plus);
  rv.q_r = 1.0 - (1.0 - q) * std::norm(snap.g_minus);
  return rv;
}

ComplexMatrix weak_measurement_operator(const WeakMeasurementParams& w) {
  w.validate();
  return ComplexMatrix::diagonal(
      {Complex(std::sqrt(1.0 - w.p), 0.0), Complex(std::sqrt(1.0 - w.q), 0.0), Complex(1.0, 0.0)});
}

ComplexMatrix reversal_operator(const ReversalParams& rv) {
  rv.validate();
  const double a = std::sqrt(1.0 - rv.q_r);
  const double b = std::sqrt(1.0 - rv.p_r);
  return ComplexMatrix::diagonal({Complex(a, 0.0), Complex(b, 0.0), Complex(a * b, 0.0)});
}

ComplexMatrix phase_removal_operator(const DecaySnapshot& snap) {
  return ComplexMatrix::diagonal({std::polar(1.0, snap.phase_plus()),
                                  std::polar(1.0, snap.phase_minus()), Complex(1.0, 0.0)});
}

ComplexMatrix weak_measure(const ComplexMatrix& rho, const WeakMeasurementParams& w) {
  return apply_tensor_power(weak_measurement_operator(w), rho);
}

ComplexMatrix reversal_measure(const ComplexMatrix& rho, const ReversalParams& rv) {
  return apply_tensor_power(reversal_operator(rv), rho);
}

ComplexMatrix phase_removal(const ComplexMatrix& rho, const DecaySnapshot& snap) {
  // V† rho V, so conjugate by the adjoint of V
  return apply_tensor_power(phase_removal_operator(snap).adjoint(), rho);
}

ProtocolResult protect_single(const DensityMatrix& rho0, const ReservoirParams& r,
                              const WeakMeasurementParams& w, double t) {
  if (rho0.dim() != 3)
    throw std::invalid_argument("protect_single: state must be one qutrit");
  return run_pipeline(rho0, r, w, t, "protect_single");
}

ProtocolResult protect_two_qutrit(const DensityMatrix& rho0, const ReservoirParams& r,
                                  const WeakMeasurementParams& w, double t) {
  if (rho0.dim() != 9)
    throw std::invalid_argument("protect_two_qutrit: state must be two qutrits");
  return run_pipeline(rho0, r, w, t, "protect_two_qutrit");
}

ProtocolResult closed_form_werner(double eta, const ReservoirParams& r,
                                  const WeakMeasurementParams& w, double t) {
  require_equal_rates(r, "closed_form_werner");
  const ResidualWeights rw = residual_weights(r, w, t);

  ComplexMatrix m = werner(eta).mat();
  m(kGroundGround, kGroundGround) +=
      Complex((eta / 3.0) * rw.s1 + ((1.0 - eta) / 9.0) * (rw.s2 + 2.0 * rw.s3), 0.0);
  const Complex fed((eta + 2.0) / 18.0 * rw.s3, 0.0);
  for (std::size_t i : {kTwoZero, kZeroTwo, kOneZero, kZeroOne}) m(i, i) += fed;
  const Complex cross(eta / 6.0 * rw.s4, 0.0);
  m(kOneZero, kTwoZero) += cross;
  m(kTwoZero, kOneZero) += cross;
  m(kZeroOne, kZeroTwo) += cross;
  m(kZeroTwo, kZeroOne) += cross;

  const double denom =
      1.0 + (eta / 3.0) * rw.s1 + ((1.0 - eta) / 9.0) * rw.s2 + (2.0 / 3.0) * rw.s3;
  m *= Complex(1.0 / denom, 0.0);
  const double norm = rw.big_r * rw.big_r * denom;
  return ProtocolResult{DensityMatrix(std::move(m)), norm, norm};
}

ProtocolResult closed_form_horodecki(double alpha, const ReservoirParams& r,
                                     const WeakMeasurementParams& w, double t) {
  require_equal_rates(r, "closed_form_horodecki");
  const ResidualWeights rw = residual_weights(r, w, t);

  ComplexMatrix m = horodecki(alpha).mat();
  m(kGroundGround, kGroundGround) +=
      Complex((2.0 * rw.s1 + 1.25 * rw.s2 + 5.0 * rw.s3) / 21.0, 0.0);
  const Complex fed_low((2.0 + alpha) / 42.0 * rw.s3, 0.0);
  const Complex fed_high((7.0 - alpha) / 42.0 * rw.s3, 0.0);
  m(kOneZero, kOneZero) += fed_low;
  m(kZeroTwo, kZeroTwo) += fed_low;
  m(kTwoZero, kTwoZero) += fed_high;
  m(kZeroOne, kZeroOne) += fed_high;
  const Complex cross(rw.s4 / 21.0, 0.0);
  m(kOneZero, kTwoZero) += cross;
  m(kTwoZero, kOneZero) += cross;
  m(kZeroOne, kZeroTwo) += cross;
  m(kZeroTwo, kZeroOne) += cross;

  const double denom = 1.0 + (2.0 * rw.s1 + 1.25 * rw.s2 + 14.0 * rw.s3) / 21.0;
  m *= Complex(1.0 / denom, 0.0);
  const double norm = rw.big_r * rw.big_r * denom;
  return ProtocolResult{DensityMatrix(std::move(m)), norm, norm};
}

}  // namespace gqd
