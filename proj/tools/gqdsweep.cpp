#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gqd/errors.hpp"
#include "gqd/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitInvariantViolation = 2;

gqd::SweepFamily parse_family(const std::string& name) {
  return name == "horodecki" ? gqd::SweepFamily::Horodecki : gqd::SweepFamily::Werner;
}

gqd::SweepMode parse_mode(const std::string& name) {
  return name == "bare" ? gqd::SweepMode::Bare : gqd::SweepMode::Protected;
}

// Flag bundle shared by the sweep and point subcommands. Flags given on the
// command line always win over values read from --config.
struct CommonOptions {
  std::string family = "werner";
  std::string mode = "protected";
  double p = 0.0;
  std::optional<double> q;
  double lambda = 1.0;
  double theta = 0.0;
  std::string config_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family, "state family")
        ->check(CLI::IsMember({"werner", "horodecki"}))
        ->capture_default_str();
    cmd->add_option("--mode", mode, "protected applies the measurement protocol, bare only the channel")
        ->check(CLI::IsMember({"protected", "bare"}))
        ->capture_default_str();
    cmd->add_option("--p", p, "weak measurement strength on |2>")->capture_default_str();
    cmd->add_option("--q", q, "weak measurement strength on |1>, defaults to p");
    cmd->add_option("--lambda", lambda, "reservoir spectral width in units of gamma")
        ->capture_default_str();
    cmd->add_option("--theta", theta, "dipole alignment in [-1, 1]")->capture_default_str();
    cmd->add_option("--config", config_path, "key=value file with these option names");
  }
};

// CLI11 processes config files only on the root app, never inside a
// subcommand, so the file is applied by hand after parsing. Values fill in
// options the command line left untouched; anything else is a config error.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");

  const auto strip = [](const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return std::string();
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = strip(line);
    if (text.empty() || text.front() == '#') continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key=value");
    const std::string key = strip(text.substr(0, eq));
    const std::string value = strip(text.substr(eq + 1));
    if (key.empty() || value.empty()) throw std::invalid_argument(where + ": expected key=value");
    CLI::Option* opt =
        key == "config" || key == "help" ? nullptr : cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) throw std::invalid_argument(where + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw std::invalid_argument(where + ": " + std::string(e.what()));
    }
  }
}

int run_sweep_command(const CommonOptions& common, const gqd::SweepConfig& grid) {
  gqd::SweepConfig cfg = grid;
  cfg.family = parse_family(common.family);
  cfg.mode = parse_mode(common.mode);
  cfg.p = common.p;
  cfg.q = common.q;
  cfg.lambda = common.lambda;
  cfg.theta = common.theta;

  const auto records = gqd::run_sweep(cfg);
  if (cfg.out_path.empty()) {
    gqd::write_csv(std::cout, cfg, records);
    return kExitOk;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "config error: cannot open output file '" << cfg.out_path << "'\n";
    return kExitConfigError;
  }
  gqd::write_csv(out, cfg, records);
  out.flush();
  if (!out) {
    std::cerr << "config error: failed writing '" << cfg.out_path << "'\n";
    return kExitConfigError;
  }
  return kExitOk;
}

int run_point_command(const CommonOptions& common, double param, double gamma_t) {
  const gqd::SweepRecord rec =
      gqd::query_point(parse_family(common.family), param, common.p, common.q, common.lambda,
                       common.theta, gamma_t, parse_mode(common.mode));
  gqd::write_record_line(std::cout, rec);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric discord of two qutrits in structured reservoirs"};
  app.require_subcommand(1);

  CommonOptions sweep_common;
  gqd::SweepConfig grid;
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter/time grid and emit CSV");
  sweep_common.attach(sweep);
  sweep->add_option("--param-min", grid.param_min, "first state parameter value")
      ->capture_default_str();
  sweep->add_option("--param-max", grid.param_max, "last state parameter value")
      ->capture_default_str();
  sweep->add_option("--param-steps", grid.param_steps, "number of parameter grid points")
      ->capture_default_str();
  sweep->add_option("--t-max", grid.t_max, "largest gamma*t")->capture_default_str();
  sweep->add_option("--t-steps", grid.t_steps, "number of time grid points")
      ->capture_default_str();
  sweep->add_option("--out", grid.out_path, "output CSV path, stdout when omitted");
  sweep->add_option("--threads", grid.threads, "worker threads for the grid")
      ->capture_default_str();

  CommonOptions point_common;
  double point_param = 0.0;
  double point_time = 0.0;
  auto* point = app.add_subcommand("point", "evaluate one grid point, print one CSV line");
  point_common.attach(point);
  point->add_option("--param", point_param, "state parameter value (required)");
  point->add_option("--gamma-t", point_time, "scaled time")->capture_default_str();

  unsigned selftest_threads = 1;
  auto* selftest =
      app.add_subcommand("selftest", "run the built-in consistency suite, nonzero exit on failure");
  selftest->add_option("--threads", selftest_threads, "worker threads for the reference sweep")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (sweep->parsed()) {
      if (!sweep_common.config_path.empty()) apply_config_file(sweep, sweep_common.config_path);
      return run_sweep_command(sweep_common, grid);
    }
    if (point->parsed()) {
      if (!point_common.config_path.empty()) apply_config_file(point, point_common.config_path);
      if (point->get_option("--param")->count() == 0)
        throw std::invalid_argument("point requires --param, on the command line or in the config file");
      return run_point_command(point_common, point_param, point_time);
    }
    return gqd::run_selftest(std::cout, selftest_threads) == 0 ? kExitOk
                                                               : kExitInvariantViolation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const gqd::invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariantViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariantViolation;
  }
}
