#include "gqd/sweep.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <thread>
#include <vector>

#include "gqd/complex_matrix.hpp"
#include "gqd/discord.hpp"
#include "gqd/errors.hpp"
#include "gqd/protocol.hpp"
#include "gqd/reservoir.hpp"
#include "gqd/states.hpp"

namespace gqd {

const char* const kCsvHeader = "family,param,gamma_t,p,q,lambda,theta,mode,gqd";

const char* family_name(SweepFamily f) {
  return f == SweepFamily::Werner ? "werner" : "horodecki";
}

const char* mode_name(SweepMode m) { return m == SweepMode::Protected ? "protected" : "bare"; }

namespace {

double family_param_limit(SweepFamily f) { return f == SweepFamily::Werner ? 1.0 : 5.0; }

SweepRecord evaluate(SweepFamily family, double param, double p, double q, double lambda,
                     double theta, double gamma_t, SweepMode mode) {
  const ReservoirParams r{1.0, 1.0, lambda, theta};
  const DensityMatrix rho0 =
      family == SweepFamily::Werner ? werner(param) : horodecki(param);

  double gqd = 0.0;
  if (mode == SweepMode::Bare) {
    gqd = gqd_lower_bound(apply_channel_two_qutrit(rho0, r, gamma_t), 3, 3);
  } else {
    const ProtocolResult res = protect_two_qutrit(rho0, r, WeakMeasurementParams{p, q}, gamma_t);
    gqd = gqd_lower_bound(res.state, 3, 3);
  }
  if (!std::isfinite(gqd) || gqd < 0.0)
    throw invariant_violation("sweep: discord bound left [0, inf)");
  return SweepRecord{family, param, gamma_t, p, q, lambda, theta, mode, gqd};
}

}  // namespace

void validate(const SweepConfig& cfg) {
  const double limit = family_param_limit(cfg.family);
  if (!std::isfinite(cfg.param_min) || !std::isfinite(cfg.param_max) ||
      cfg.param_min < 0.0 || cfg.param_max > limit || cfg.param_min > cfg.param_max)
    throw std::invalid_argument(std::string("sweep config: parameter range must satisfy 0 <= min <= max <= ") +
                                format_double(limit) + " for family " + family_name(cfg.family));
  if (cfg.param_steps < 2) throw std::invalid_argument("sweep config: param-steps must be at least 2");
  if (cfg.t_steps < 2) throw std::invalid_argument("sweep config: t-steps must be at least 2");
  if (!(cfg.t_max > 0.0) || !std::isfinite(cfg.t_max))
    throw std::invalid_argument("sweep config: t-max must be positive and finite");
  if (!(cfg.p >= 0.0 && cfg.p < 1.0))
    throw std::invalid_argument("sweep config: p must lie in [0, 1)");
  const double q = cfg.resolved_q();
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("sweep config: q must lie in [0, 1)");
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda))
    throw std::invalid_argument("sweep config: lambda must be positive and finite");
  if (!std::isfinite(cfg.theta) || cfg.theta < -1.0 || cfg.theta > 1.0)
    throw std::invalid_argument("sweep config: theta must lie in [-1, 1]");
  if (cfg.mode == SweepMode::Bare && (cfg.p != 0.0 || q != 0.0))
    throw std::invalid_argument("sweep config: bare mode has no measurement, p and q must be 0");
  if (cfg.threads < 1) throw std::invalid_argument("sweep config: threads must be at least 1");
}

double grid_value(double lo, double hi, std::size_t steps, std::size_t k) {
  return lo + (hi - lo) * (static_cast<double>(k) / static_cast<double>(steps - 1));
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const double q = cfg.resolved_q();
  const std::size_t total = cfg.param_steps * cfg.t_steps;
  std::vector<SweepRecord> records(total);

  auto eval_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t pi = idx / cfg.t_steps;
      const std::size_t ti = idx % cfg.t_steps;
      const double param = grid_value(cfg.param_min, cfg.param_max, cfg.param_steps, pi);
      const double gamma_t = grid_value(0.0, cfg.t_max, cfg.t_steps, ti);
      records[idx] = evaluate(cfg.family, param, cfg.p, q, cfg.lambda, cfg.theta, gamma_t,
                              cfg.mode);
    }
  };

  const std::size_t workers = std::min<std::size_t>(cfg.threads, total);
  if (workers <= 1) {
    eval_range(0, total);
    return records;
  }

  // Each worker owns a contiguous slice of the record vector, so no
  // synchronization is needed and the output never depends on scheduling.
  const std::size_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        eval_range(w * chunk, std::min(total, (w + 1) * chunk));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return records;
}

SweepRecord query_point(SweepFamily family, double param, double p, std::optional<double> q,
                        double lambda, double theta, double gamma_t, SweepMode mode) {
  SweepConfig probe;
  probe.family = family;
  probe.param_min = param;
  probe.param_max = param;
  probe.p = p;
  probe.q = q;
  probe.lambda = lambda;
  probe.theta = theta;
  probe.mode = mode;
  if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t))
    throw std::invalid_argument("query_point: gamma_t must be nonnegative and finite");
  probe.t_max = gamma_t > 0.0 ? gamma_t : 1.0;  // placeholder, range itself unused
  validate(probe);
  return evaluate(family, param, p, probe.resolved_q(), lambda, theta, gamma_t, mode);
}

std::string format_double(double v) {
  if (!std::isfinite(v)) throw invariant_violation("format_double: value not finite");
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw invariant_violation("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void write_record_line(std::ostream& os, const SweepRecord& rec) {
  os << family_name(rec.family) << ',' << format_double(rec.param) << ','
     << format_double(rec.gamma_t) << ',' << format_double(rec.p) << ','
     << format_double(rec.q) << ',' << format_double(rec.lambda) << ','
     << format_double(rec.theta) << ',' << mode_name(rec.mode) << ','
     << format_double(rec.gqd) << '\n';
}

void write_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRecord>& records) {
  os << "# family=" << family_name(cfg.family) << '\n'
     << "# param_min=" << format_double(cfg.param_min) << '\n'
     << "# param_max=" << format_double(cfg.param_max) << '\n'
     << "# param_steps=" << cfg.param_steps << '\n'
     << "# t_max=" << format_double(cfg.t_max) << '\n'
     << "# t_steps=" << cfg.t_steps << '\n'
     << "# p=" << format_double(cfg.p) << '\n'
     << "# q=" << format_double(cfg.resolved_q()) << '\n'
     << "# lambda=" << format_double(cfg.lambda) << '\n'
     << "# theta=" << format_double(cfg.theta) << '\n'
     << "# mode=" << mode_name(cfg.mode) << '\n'
     << kCsvHeader << '\n';
  for (const auto& rec : records) write_record_line(os, rec);
}

std::string format_csv(const SweepConfig& cfg, const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  write_csv(out, cfg, records);
  return out.str();
}

namespace {

struct SelftestReporter {
  std::ostream& os;
  int failures = 0;

  void pass(const char* name) { os << "ok " << name << '\n'; }
  void fail(const char* name, const std::string& detail) {
    os << "FAIL " << name << ": " << detail << '\n';
    ++failures;
  }
  void check(const char* name, bool good, const std::string& detail) {
    if (good)
      pass(name);
    else
      fail(name, detail);
  }
};

}  // namespace

int run_selftest(std::ostream& os, unsigned threads) {
  if (threads < 1) throw std::invalid_argument("selftest: threads must be at least 1");
  SelftestReporter rep{os};

  // Closed-form decay amplitudes against direct integration.
  {
    double worst = 0.0;
    for (double lambda : {0.1, 1.0}) {
      for (double theta : {0.0, 1.0}) {
        const ReservoirParams r{1.0, 1.0, lambda, theta};
        const auto trace = decay_ode_oracle(r, 20.0, 4000);
        for (std::size_t k = 0; k < trace.size(); k += 40) {
          const DecaySnapshot closed = decay_functions(r, trace[k].t);
          worst = std::max(worst, std::abs(closed.g_plus - trace[k].g_plus));
          worst = std::max(worst, std::abs(closed.g_minus - trace[k].g_minus));
        }
      }
    }
    rep.check("decay amplitudes match ode integration", worst < 1e-6,
              "max deviation " + format_double(worst));
  }

  // Kraus completeness at a few snapshots.
  {
    double worst = 0.0;
    const ReservoirParams r{1.0, 1.0, 0.5, 0.3};
    for (double t : {0.0, 0.7, 3.0, 12.0}) {
      const auto kraus = kraus_operators(decay_functions(r, t));
      ComplexMatrix sum(3);
      for (const auto& k : kraus) sum += k.adjoint() * k;
      worst = std::max(worst, max_abs_diff(sum, ComplexMatrix::identity(3)));
    }
    rep.check("kraus operators complete", worst < 1e-12, "max deviation " + format_double(worst));
  }

  // Known discord values at t = 0.
  {
    double worst = 0.0;
    for (double eta : {0.0, 0.5, 1.0}) {
      const double want = 2.0 * eta * eta / 3.0;
      worst = std::max(worst, std::abs(gqd_lower_bound(werner(eta), 3, 3) - want));
    }
    worst = std::max(worst, std::abs(gqd_lower_bound(bell_qutrit(), 3, 3) - 2.0 / 3.0));
    rep.check("analytic discord values", worst < 1e-9, "max deviation " + format_double(worst));
  }

  // Closed forms against the operator pipeline.
  {
    double worst = 0.0;
    {
      const ReservoirParams r{1.0, 1.0, 1.0, 0.0};
      const WeakMeasurementParams w{0.5, 0.5};
      const auto direct = closed_form_werner(0.8, r, w, 2.0);
      const auto piped = protect_two_qutrit(werner(0.8), r, w, 2.0);
      worst = std::max(worst, max_abs_diff(direct.state.mat(), piped.state.mat()));
      worst = std::max(worst, std::abs(direct.norm - piped.norm));
    }
    {
      const ReservoirParams r{1.0, 1.0, 0.1, 0.0};
      const WeakMeasurementParams w{0.99, 0.99};
      const auto direct = closed_form_horodecki(3.0, r, w, 5.0);
      const auto piped = protect_two_qutrit(horodecki(3.0), r, w, 5.0);
      worst = std::max(worst, max_abs_diff(direct.state.mat(), piped.state.mat()));
      worst = std::max(worst, std::abs(direct.norm - piped.norm));
    }
    rep.check("closed forms match operator pipeline", worst < 1e-10,
              "max deviation " + format_double(worst));
  }

  // Mirror symmetry of the second family parameter.
  {
    const double a = gqd_lower_bound(horodecki(1.0), 3, 3);
    const double b = gqd_lower_bound(horodecki(4.0), 3, 3);
    rep.check("family parameter mirror symmetry", std::abs(a - b) < 1e-10,
              "deviation " + format_double(std::abs(a - b)));
  }

  // Reference sweep: thread-count independence, then emit the CSV.
  SweepConfig ref;
  ref.family = SweepFamily::Werner;
  ref.param_min = 0.0;
  ref.param_max = 1.0;
  ref.param_steps = 5;
  ref.t_max = 5.0;
  ref.t_steps = 6;
  ref.p = 0.5;
  ref.lambda = 1.0;
  ref.mode = SweepMode::Protected;

  ref.threads = 1;
  const std::string serial_csv = format_csv(ref, run_sweep(ref));
  ref.threads = threads;
  const std::string threaded_csv = format_csv(ref, run_sweep(ref));
  rep.check("reference sweep independent of thread count", serial_csv == threaded_csv,
            "outputs differ");

  os << threaded_csv;
  return rep.failures;
}

}  // namespace gqd
