// End-to-end acceptance gate. Each check prints one [PASS]/[FAIL] line with
// the measured margins; the exit code is the number of failed checks. An
// optional argument selects a single check by number.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gqd/complex_matrix.hpp"
#include "gqd/density_matrix.hpp"
#include "gqd/discord.hpp"
#include "gqd/linalg.hpp"
#include "gqd/protocol.hpp"
#include "gqd/reservoir.hpp"
#include "gqd/states.hpp"
#include "gqd/sweep.hpp"
#include "test_support.hpp"

using gqd::Complex;
using gqd::ComplexMatrix;
using gqd::DensityMatrix;
using gqd::ReservoirParams;
using gqd::WeakMeasurementParams;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

std::string secs(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << v << "s";
  return os.str();
}

// 1: closed-form decay amplitudes against a fine Runge-Kutta integration
Outcome check_decay_oracle() {
  const Stopwatch sw;
  double worst = 0.0;
  for (double lambda : {0.1, 1.0})
    for (double theta : {0.0, 0.5, 1.0}) {
      const ReservoirParams r{1.0, 1.0, lambda, theta};
      for (const auto& snap : gqd::decay_ode_oracle(r, 20.0, 20000)) {
        const auto closed = gqd::decay_functions(r, snap.t);
        worst = std::max(worst, std::abs(closed.g_plus - snap.g_plus));
        worst = std::max(worst, std::abs(closed.g_minus - snap.g_minus));
      }
    }
  const double el = sw.seconds();
  return {worst < 1e-6 && el < 5.0, "max dev " + sci(worst) + ", " + secs(el)};
}

// 2: Kraus completeness on a dense grid, channel output validity on random states
Outcome check_channel_integrity() {
  const Stopwatch sw;
  double worst_complete = 0.0;
  for (double lambda : {0.1, 0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0})
    for (double theta : {0.0, 0.25, 0.5, 0.75, 1.0})
      for (std::size_t k = 0; k < 50; ++k) {
        const ReservoirParams r{1.0, 1.0, lambda, theta};
        const auto kraus =
            gqd::kraus_operators(gqd::decay_functions(r, gqd::grid_value(0.0, 20.0, 50, k)));
        ComplexMatrix sum(3);
        for (const auto& op : kraus) sum += op.adjoint() * op;
        worst_complete =
            std::max(worst_complete, gqd::max_abs_diff(sum, ComplexMatrix::identity(3)));
      }

  double worst_trace = 0.0, worst_herm = 0.0, lowest_eig = 0.0;
  const auto inspect = [&](const DensityMatrix& out) {
    worst_trace = std::max(worst_trace, std::abs(out.mat().trace() - Complex(1.0, 0.0)));
    worst_herm = std::max(worst_herm, gqd::max_abs_diff(out.mat(), out.mat().adjoint()));
    lowest_eig = std::min(lowest_eig, gqd::hermitian_eigenvalues(out.mat()).back());
  };
  for (int i = 0; i < 100; ++i) {
    const ReservoirParams r{1.3, 0.8, 0.7, 0.6};
    inspect(gqd::apply_channel_single(gqd::random_density(1000 + i, 3), r,
                                      gqd::grid_value(0.1, 3.0, 100, i)));
  }
  for (int i = 0; i < 100; ++i) {
    const ReservoirParams r{1.0, 1.0, 2.0, 0.25};
    inspect(gqd::apply_channel_two_qutrit(gqd::random_density(2000 + i, 9), r,
                                          gqd::grid_value(0.1, 3.0, 100, i)));
  }

  const double el = sw.seconds();
  const bool pass = worst_complete < 1e-12 && worst_trace < 1e-10 && worst_herm < 1e-10 &&
                    lowest_eig > -1e-10 && el < 20.0;
  return {pass, "completeness " + sci(worst_complete) + ", trace " + sci(worst_trace) +
                    ", hermiticity " + sci(worst_herm) + ", min eig " + sci(lowest_eig) +
                    ", " + secs(el)};
}

// 3: discord values with known closed forms, re-derived through the
// independent expectation-value oracle
Outcome check_discord_anchors() {
  const Stopwatch sw;
  double worst_anchor = 0.0, worst_oracle = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double eta = 0.1 * k;
    const DensityMatrix w = gqd::werner(eta);
    worst_anchor =
        std::max(worst_anchor, std::abs(gqd::gqd_lower_bound(w, 3, 3) - 2.0 * eta * eta / 3.0));
    worst_oracle = std::max(worst_oracle, std::abs(gqd::gqd_lower_bound_raw(w, 3, 3) -
                                                   gqd::test::gqd_bound_oracle(w.mat(), 3, 3)));
  }
  worst_anchor = std::max(
      worst_anchor, std::abs(gqd::gqd_lower_bound(gqd::bell_qutrit(), 3, 3) - 2.0 / 3.0));

  const DensityMatrix mixed(ComplexMatrix::identity(9) * Complex(1.0 / 9.0, 0.0));
  worst_anchor = std::max(worst_anchor, gqd::gqd_lower_bound(mixed, 3, 3));

  ComplexMatrix bell2(4);
  for (std::size_t i : {0, 3})
    for (std::size_t j : {0, 3}) bell2(i, j) = Complex(0.5, 0.0);
  const DensityMatrix b2(std::move(bell2));
  const double exact2 = gqd::gqd_two_qubit(b2);
  worst_anchor = std::max(worst_anchor, std::abs(exact2 - 0.5));
  worst_anchor = std::max(worst_anchor, std::abs(gqd::gqd_lower_bound(b2, 2, 2) - 0.5));
  worst_oracle = std::max(worst_oracle, std::abs(gqd::gqd_lower_bound_raw(b2, 2, 2) -
                                                 gqd::test::gqd_bound_oracle(b2.mat(), 2, 2)));

  const double el = sw.seconds();
  const bool pass = worst_anchor < 1e-9 && worst_oracle < 1e-10;
  return {pass, "max anchor dev " + sci(worst_anchor) + ", max oracle dev " +
                    sci(worst_oracle) + ", " + secs(el)};
}

// 4: is the eigenvalue-sum bound equal to the exact two-qubit discord?
// The bound is provably below the exact value on generic states, so this
// check documents the gap honestly instead of widening its tolerance.
Outcome check_two_qubit_tightness() {
  const Stopwatch sw;
  int tight_misses = 0, validity_misses = 0;
  double max_gap = 0.0;
  std::uint64_t worst_seed = 0;
  double worst_exact = 0.0, worst_bound = 0.0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const DensityMatrix rho = gqd::random_density(seed, 4);
    const double bound = gqd::gqd_lower_bound(rho, 2, 2);
    const double exact = gqd::gqd_two_qubit(rho);
    if (bound > exact + 1e-12) ++validity_misses;
    const double gap = exact - bound;
    if (std::abs(gap) > 1e-9) ++tight_misses;
    if (gap > max_gap) {
      max_gap = gap;
      worst_seed = seed;
      worst_exact = exact;
      worst_bound = bound;
    }
  }
  const double brute =
      gqd::test::projective_discord_bruteforce(gqd::random_density(worst_seed, 4).mat());
  const double el = sw.seconds();

  std::ostringstream os;
  if (tight_misses == 0 && validity_misses == 0 && el < 10.0) {
    return {true, "bound tight on all 1000 states, " + secs(el)};
  }
  os << "bound stayed valid on all 1000 states"
     << (validity_misses ? " EXCEPT " + std::to_string(validity_misses) : "")
     << " but is not tight on " << tight_misses << "; largest gap " << sci(max_gap)
     << " at seed " << worst_seed << " (exact " << sci(worst_exact) << ", bound "
     << sci(worst_bound) << "); direct measurement minimization reproduces the exact value"
     << " to " << sci(std::abs(brute - worst_exact))
     << ", so the gap is real: the eigenvalue sum is a lower bound, not an equality, "
     << secs(el);
  return {false, os.str()};
}

// 5: closed-form protected families against the operator pipeline
Outcome check_closed_forms() {
  const Stopwatch sw;
  double worst_entry = 0.0, worst_norm = 0.0;
  int points = 0;
  for (double p : {0.0, 0.5, 0.99})
    for (double lambda : {0.1, 1.0})
      for (double t : {0.0, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const ReservoirParams r{1.0, 1.0, lambda, 0.0};
        const WeakMeasurementParams w{p, p};
        for (int k = 0; k <= 10; ++k) {
          const double eta = 0.1 * k;
          const auto closed = gqd::closed_form_werner(eta, r, w, t);
          const auto pipe = gqd::protect_two_qutrit(gqd::werner(eta), r, w, t);
          worst_entry =
              std::max(worst_entry, gqd::max_abs_diff(closed.state.mat(), pipe.state.mat()));
          worst_norm = std::max(worst_norm, std::abs(closed.norm - pipe.norm) /
                                                std::max(pipe.norm, 1e-300));
          ++points;

          const double alpha = 0.5 * k;
          const auto closed_h = gqd::closed_form_horodecki(alpha, r, w, t);
          const auto pipe_h = gqd::protect_two_qutrit(gqd::horodecki(alpha), r, w, t);
          worst_entry =
              std::max(worst_entry, gqd::max_abs_diff(closed_h.state.mat(), pipe_h.state.mat()));
          worst_norm = std::max(worst_norm, std::abs(closed_h.norm - pipe_h.norm) /
                                                std::max(pipe_h.norm, 1e-300));
          ++points;
        }
      }
  const double el = sw.seconds();
  const bool pass = worst_entry < 1e-10 && worst_norm < 1e-10 && el < 60.0;
  return {pass, std::to_string(points) + " grid points, max entry dev " + sci(worst_entry) +
                    ", max norm dev " + sci(worst_norm) + ", " + secs(el)};
}

// 6: qualitative physics of the surfaces: decay to zero without protection,
// retention under strong protection, near-independence from the memory time
// under strong protection, and revival-proof death of the cyclic family
Outcome check_trends() {
  const Stopwatch sw;
  gqd::SweepConfig bare;
  bare.mode = gqd::SweepMode::Bare;
  bare.p = 0.0;

  // (a) unprotected isotropic family at the final time
  const auto bare_w = gqd::run_sweep(bare);
  double final_max = 0.0;
  for (std::size_t a = 0; a < bare.param_steps; ++a)
    final_max = std::max(final_max, bare_w[a * bare.t_steps + (bare.t_steps - 1)].gqd);

  // (b), (c) strongly protected surfaces for both memory regimes
  gqd::SweepConfig prot;
  prot.p = 0.99;
  prot.lambda = 0.1;
  const auto surf01 = gqd::run_sweep(prot);
  prot.lambda = 1.0;
  const auto surf1 = gqd::run_sweep(prot);

  double retention_dev = 0.0;
  for (const auto* surf : {&surf01, &surf1})
    for (std::size_t a = 8; a < prot.param_steps; ++a) {  // eta >= 0.2
      const double base = (*surf)[a * prot.t_steps].gqd;
      for (std::size_t b = 0; b < prot.t_steps; ++b) {
        const double dev =
            std::abs((*surf)[a * prot.t_steps + b].gqd - base) / std::max(base, 1e-6);
        retention_dev = std::max(retention_dev, dev);
      }
    }

  double surface_gap = 0.0;
  for (std::size_t i = 0; i < surf01.size(); ++i)
    surface_gap = std::max(surface_gap, std::abs(surf01[i].gqd - surf1[i].gqd));

  // (d) every member of the cyclic family decays below threshold at some time
  gqd::SweepConfig horo = bare;
  horo.family = gqd::SweepFamily::Horodecki;
  horo.param_max = 5.0;
  const auto bare_h = gqd::run_sweep(horo);
  double revival_floor = 0.0;
  for (std::size_t a = 0; a < horo.param_steps; ++a) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < horo.t_steps; ++b)
      lowest = std::min(lowest, bare_h[a * horo.t_steps + b].gqd);
    revival_floor = std::max(revival_floor, lowest);
  }

  const double el = sw.seconds();
  const bool pass =
      final_max < 1e-3 && retention_dev <= 0.05 && surface_gap <= 0.02 && revival_floor < 1e-3;
  return {pass, "final-time max " + sci(final_max) + ", retention dev " + sci(retention_dev) +
                    ", memory-regime gap " + sci(surface_gap) + ", revival floor " +
                    sci(revival_floor) + ", " + secs(el)};
}

// 7: parameter mirror symmetry of the cyclic family and the entanglement
// boundary of the isotropic family under partial transposition
Outcome check_symmetry_positivity() {
  const Stopwatch sw;
  double worst_rest = 0.0, worst_evolved = 0.0;
  const ReservoirParams r{1.0, 1.0, 0.1, 0.0};
  const WeakMeasurementParams w{0.5, 0.5};
  for (double alpha : {0.0, 0.5, 1.25, 2.0, 2.5}) {
    worst_rest = std::max(worst_rest,
                          std::abs(gqd::gqd_lower_bound(gqd::horodecki(alpha), 3, 3) -
                                   gqd::gqd_lower_bound(gqd::horodecki(5.0 - alpha), 3, 3)));
    const auto lo = gqd::protect_two_qutrit(gqd::horodecki(alpha), r, w, 3.0);
    const auto hi = gqd::protect_two_qutrit(gqd::horodecki(5.0 - alpha), r, w, 3.0);
    worst_evolved = std::max(worst_evolved, std::abs(gqd::gqd_lower_bound(lo.state, 3, 3) -
                                                     gqd::gqd_lower_bound(hi.state, 3, 3)));
  }

  const double sep_eig =
      gqd::hermitian_eigenvalues(gqd::partial_transpose(gqd::werner(0.25).mat(), 3, 3)).back();
  const double ent_eig =
      gqd::hermitian_eigenvalues(gqd::partial_transpose(gqd::werner(0.30).mat(), 3, 3)).back();

  const double el = sw.seconds();
  const bool pass =
      worst_rest < 1e-10 && worst_evolved < 1e-10 && sep_eig >= -1e-12 && ent_eig < -1e-4;
  return {pass, "mirror dev at rest " + sci(worst_rest) + ", evolved " + sci(worst_evolved) +
                    ", boundary eig " + sci(sep_eig) + ", entangled eig " + sci(ent_eig) +
                    ", " + secs(el)};
}

// 8: byte-identical output across repeated runs and thread counts
Outcome check_determinism() {
  const Stopwatch sw;
  std::ostringstream s1, s2, s4;
  const int f1 = gqd::run_selftest(s1, 1);
  const int f2 = gqd::run_selftest(s2, 1);
  const int f4 = gqd::run_selftest(s4, 4);
  const bool selftest_ok = f1 == 0 && f2 == 0 && f4 == 0;
  const bool selftest_stable = s1.str() == s2.str() && s1.str() == s4.str();

  gqd::SweepConfig cfg;
  cfg.param_steps = 9;
  cfg.t_steps = 11;
  cfg.t_max = 5.0;
  cfg.p = 0.5;
  const std::string csv1 = gqd::format_csv(cfg, gqd::run_sweep(cfg));
  gqd::SweepConfig threaded = cfg;
  threaded.threads = 4;
  const std::string csv4 = gqd::format_csv(threaded, gqd::run_sweep(threaded));

  const double el = sw.seconds();
  const bool pass = selftest_ok && selftest_stable && csv1 == csv4;
  return {pass, std::string("selftest ") + (selftest_ok ? "clean" : "FAILING") +
                    ", report " + (selftest_stable ? "stable" : "UNSTABLE") + " across runs and"
                    " thread counts, sweep csv " + (csv1 == csv4 ? "identical" : "DIFFERS") +
                    " across thread counts, " + secs(el)};
}

struct Entry {
  int id;
  const char* name;
  Outcome (*fn)();
};

constexpr std::array<Entry, 8> kChecks{{
    {1, "decay closed form matches the integration oracle", check_decay_oracle},
    {2, "channel completeness and output validity", check_channel_integrity},
    {3, "discord anchor values", check_discord_anchors},
    {4, "eigenvalue-sum bound tightness on two-qubit states", check_two_qubit_tightness},
    {5, "closed forms match the operator pipeline", check_closed_forms},
    {6, "decay and protection trends", check_trends},
    {7, "mirror symmetry and positivity boundaries", check_symmetry_positivity},
    {8, "deterministic output", check_determinism},
}};

}  // namespace

int main(int argc, char** argv) {
  std::optional<int> selected;
  if (argc > 1) {
    const int id = std::atoi(argv[1]);
    if (id < 1 || id > 8) {
      std::cerr << "usage: " << argv[0] << " [1-8]\n";
      return 64;
    }
    selected = id;
  }

  int failures = 0;
  for (const auto& entry : kChecks) {
    if (selected && *selected != entry.id) continue;
    Outcome out;
    try {
      out = entry.fn();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << entry.id << ' ' << entry.name << ": "
              << out.detail << '\n';
    failures += !out.pass;
  }
  return failures;
}
