#include "gqd/reservoir.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "gqd/errors.hpp"
#include "gqd/linalg.hpp"

namespace gqd {

namespace {

// Overshoot of |G| beyond 1 that we silently clamp; anything larger means the
// closed form was evaluated outside its domain.
constexpr double kUnitDiskSlack = 1e-9;

Complex clamp_to_unit_disk(Complex g, const char* label) {
  const double a = std::abs(g);
  if (a <= 1.0) return g;
  if (a <= 1.0 + kUnitDiskSlack) return g / a;
  throw invariant_violation(std::string("decay_functions: |") + label +
                            "| exceeds 1 beyond rounding slack");
}

// exp(-lambda t/2) [cosh(d t/2) + (lambda/d) sinh(d t/2)], with the d -> 0
// limit handled explicitly. d enters only through d^2 = lambda^2 - 2 lambda
// gamma, so the branch choice of the square root cancels.
Complex decay_amplitude(double lambda, double gamma, double t) {
  const Complex d = std::sqrt(Complex(lambda * lambda - 2.0 * lambda * gamma, 0.0));
  const double envelope = std::exp(-0.5 * lambda * t);
  if (std::abs(d) * t < 1e-6) {
    return Complex(envelope * (1.0 + 0.5 * lambda * t), 0.0);
  }
  const Complex arg = 0.5 * d * t;
  return envelope * (std::cosh(arg) + (lambda / d) * std::sinh(arg));
}

}  // namespace

void ReservoirParams::validate() const {
  if (!(gamma1 > 0.0) || !std::isfinite(gamma1))
    throw std::invalid_argument("ReservoirParams: gamma1 must be positive and finite");
  if (!(gamma2 > 0.0) || !std::isfinite(gamma2))
    throw std::invalid_argument("ReservoirParams: gamma2 must be positive and finite");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("ReservoirParams: lambda must be positive and finite");
  if (!std::isfinite(theta) || theta < -1.0 || theta > 1.0)
    throw std::invalid_argument("ReservoirParams: theta must lie in [-1, 1]");
}

StructureConstants structure_constants(const ReservoirParams& r) {
  r.validate();
  StructureConstants s;
  const double diff = r.gamma1 - r.gamma2;
  s.h = std::sqrt(diff * diff + 4.0 * r.gamma1 * r.gamma2 * r.theta * r.theta);
  s.gamma_plus = 0.5 * (r.gamma1 + r.gamma2 + s.h);
  s.gamma_minus = 0.5 * (r.gamma1 + r.gamma2 - s.h);
  s.d_plus = std::sqrt(Complex(r.lambda * r.lambda - 2.0 * r.lambda * s.gamma_plus, 0.0));
  s.d_minus = std::sqrt(Complex(r.lambda * r.lambda - 2.0 * r.lambda * s.gamma_minus, 0.0));
  return s;
}

double DecaySnapshot::abs_plus() const { return std::abs(g_plus); }
double DecaySnapshot::abs_minus() const { return std::abs(g_minus); }
double DecaySnapshot::phase_plus() const { return std::arg(g_plus); }
double DecaySnapshot::phase_minus() const { return std::arg(g_minus); }

DecaySnapshot decay_functions(const ReservoirParams& r, double t) {
  r.validate();
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("decay_functions: t must be nonnegative and finite");
  const StructureConstants s = structure_constants(r);
  DecaySnapshot snap;
  snap.t = t;
  snap.g_plus = clamp_to_unit_disk(decay_amplitude(r.lambda, s.gamma_plus, t), "G+");
  snap.g_minus = clamp_to_unit_disk(decay_amplitude(r.lambda, s.gamma_minus, t), "G-");
  return snap;
}

std::vector<DecaySnapshot> decay_ode_oracle(const ReservoirParams& r, double t_max,
                                            std::size_t steps) {
  r.validate();
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw std::invalid_argument("decay_ode_oracle: t_max must be positive and finite");
  if (steps == 0) throw std::invalid_argument("decay_ode_oracle: steps must be positive");

  const StructureConstants s = structure_constants(r);
  const double omega[2] = {r.lambda * s.gamma_plus / 2.0, r.lambda * s.gamma_minus / 2.0};
  const double dt = t_max / static_cast<double>(steps);

  std::vector<DecaySnapshot> out(steps + 1);
  double x[2] = {1.0, 1.0};
  double v[2] = {0.0, 0.0};
  out[0] = DecaySnapshot{0.0, Complex(1.0, 0.0), Complex(1.0, 0.0)};

  for (std::size_t k = 1; k <= steps; ++k) {
    for (int mode = 0; mode < 2; ++mode) {
      const double w = omega[mode];
      // classic RK4 on (x, v) with v' = -lambda v - w x
      const double k1x = v[mode];
      const double k1v = -r.lambda * v[mode] - w * x[mode];
      const double k2x = v[mode] + 0.5 * dt * k1v;
      const double k2v = -r.lambda * (v[mode] + 0.5 * dt * k1v) - w * (x[mode] + 0.5 * dt * k1x);
      const double k3x = v[mode] + 0.5 * dt * k2v;
      const double k3v = -r.lambda * (v[mode] + 0.5 * dt * k2v) - w * (x[mode] + 0.5 * dt * k2x);
      const double k4x = v[mode] + dt * k3v;
      const double k4v = -r.lambda * (v[mode] + dt * k3v) - w * (x[mode] + dt * k3x);
      x[mode] += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      v[mode] += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    out[k] = DecaySnapshot{static_cast<double>(k) * dt, Complex(x[0], 0.0), Complex(x[1], 0.0)};
  }
  return out;
}

ComplexMatrix diagonalizing_unitary(const ReservoirParams& r) {
  r.validate();
  const StructureConstants s = structure_constants(r);
  ComplexMatrix u = ComplexMatrix::identity(3);
  if (s.h == 0.0) return u;  // already decoupled, nothing to rotate
  const double cos_part = std::sqrt(std::max(0.0, (s.h + r.gamma1 - r.gamma2) / (2.0 * s.h)));
  const double sin_part = std::sqrt(std::max(0.0, (s.h - r.gamma1 + r.gamma2) / (2.0 * s.h)));
  u(0, 0) = Complex(cos_part, 0.0);
  u(0, 1) = Complex(-sin_part, 0.0);
  u(1, 0) = Complex(sin_part, 0.0);
  u(1, 1) = Complex(cos_part, 0.0);
  return u;
}

std::array<ComplexMatrix, 3> kraus_operators(const DecaySnapshot& snap) {
  const double leak_plus = std::sqrt(std::max(0.0, 1.0 - std::norm(snap.g_plus)));
  const double leak_minus = std::sqrt(std::max(0.0, 1.0 - std::norm(snap.g_minus)));
  ComplexMatrix damp = ComplexMatrix::diagonal({snap.g_plus, snap.g_minus, Complex(1.0, 0.0)});
  ComplexMatrix feed_plus(3);
  feed_plus(2, 0) = Complex(leak_plus, 0.0);
  ComplexMatrix feed_minus(3);
  feed_minus(2, 1) = Complex(leak_minus, 0.0);
  return {std::move(damp), std::move(feed_plus), std::move(feed_minus)};
}

DensityMatrix apply_channel_single(const DensityMatrix& rho0, const ReservoirParams& r,
                                   double t) {
  if (rho0.dim() != 3)
    throw std::invalid_argument("apply_channel_single: state must be one qutrit");
  const ComplexMatrix u = diagonalizing_unitary(r);
  const auto kraus = kraus_operators(decay_functions(r, t));

  ComplexMatrix rotated = congruence(u, rho0.mat());
  ComplexMatrix evolved(3);
  for (const auto& k : kraus) evolved += congruence(k, rotated);
  return DensityMatrix(congruence(u.adjoint(), evolved), rho0.tol());
}

DensityMatrix apply_channel_two_qutrit(const DensityMatrix& rho0, const ReservoirParams& r,
                                       double t) {
  if (rho0.dim() != 9)
    throw std::invalid_argument("apply_channel_two_qutrit: state must be two qutrits");
  const ComplexMatrix u = diagonalizing_unitary(r);
  const ComplexMatrix uu = tensor(u, u);
  const auto kraus = kraus_operators(decay_functions(r, t));

  ComplexMatrix rotated = congruence(uu, rho0.mat());
  ComplexMatrix evolved(9);
  for (const auto& ka : kraus)
    for (const auto& kb : kraus) evolved += congruence(tensor(ka, kb), rotated);
  return DensityMatrix(congruence(uu.adjoint(), evolved), rho0.tol());
}

}  // namespace gqd
