#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gqd {

enum class SweepFamily { Werner, Horodecki };
enum class SweepMode { Protected, Bare };

const char* family_name(SweepFamily f);
const char* mode_name(SweepMode m);

// Grid sweep over (state parameter) x (scaled time). Defaults reproduce the
// figure grids: 41 parameter values by 81 times up to gamma_t = 20.
struct SweepConfig {
  SweepFamily family = SweepFamily::Werner;
  double param_min = 0.0;
  double param_max = 1.0;
  std::size_t param_steps = 41;
  double t_max = 20.0;
  std::size_t t_steps = 81;
  double p = 0.0;
  std::optional<double> q;  // pinned to p when not set
  double lambda = 1.0;
  double theta = 0.0;
  SweepMode mode = SweepMode::Protected;
  std::string out_path;     // consumed by the CLI; empty means stdout
  unsigned threads = 1;

  double resolved_q() const { return q ? *q : p; }
};

struct SweepRecord {
  SweepFamily family = SweepFamily::Werner;
  double param = 0.0;
  double gamma_t = 0.0;
  double p = 0.0;
  double q = 0.0;
  double lambda = 1.0;
  double theta = 0.0;
  SweepMode mode = SweepMode::Protected;
  double gqd = 0.0;
};

// Throws std::invalid_argument describing the first problem found.
// Bare mode carries no measurement, so it rejects nonzero p or q.
void validate(const SweepConfig& cfg);

// Inclusive uniform grid, value(k) = lo + (hi - lo) * k / (steps - 1).
// Shared by sweep and tests so expected grids can be reproduced bit-exactly.
double grid_value(double lo, double hi, std::size_t steps, std::size_t k);

// Evaluates the whole grid, parameter-major then time. Safe to call with
// threads > 1: grid points are independent and the record order never
// depends on scheduling.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

// One grid point with the same semantics as run_sweep.
SweepRecord query_point(SweepFamily family, double param, double p, std::optional<double> q,
                        double lambda, double theta, double gamma_t, SweepMode mode);

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

// CSV emission. The comment block echoes the resolved grid configuration
// (not the thread count or output path, which cannot affect the numbers).
void write_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRecord>& records);
std::string format_csv(const SweepConfig& cfg, const std::vector<SweepRecord>& records);
void write_record_line(std::ostream& os, const SweepRecord& rec);

extern const char* const kCsvHeader;

// Quick end-to-end consistency suite: decay oracle, Kraus completeness,
// analytic discord values, closed form vs pipeline, mirror symmetry, and a
// reference sweep checked for thread-count-independent output. Prints one
// line per check plus the reference CSV; returns the number of failures.
int run_selftest(std::ostream& os, unsigned threads = 1);

}  // namespace gqd
