#pragma once
// Verification suites behind the command-line tool, and their configuration.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pnt/construction.hpp"
#include "pnt/error.hpp"
#include "pnt/report.hpp"
#include "pnt/sieve.hpp"
#include "pnt/universe.hpp"

namespace pnt {

struct RunConfig {
  std::string subcommand = "all";
  std::uint64_t budget = std::uint64_t{1} << 32;
  std::uint64_t seed = 1;
  UniverseKind universe = UniverseKind::Synthetic;
  std::string output_dir = "pnt-reports";
  Format format = Format::Json;
  unsigned workers = 1;
  std::string cache_dir;  // empty: $PNT_CACHE_DIR, else no cache

  // sieve: table over [lo, hi)
  std::uint64_t lo = 1;
  std::uint64_t hi = 1'000'001;

  // tk
  std::size_t trials = 200;

  // chebyshev
  std::uint64_t legendre_max = 2000;
  std::uint64_t binomial_max = 100000;
  std::vector<double> sigmas{1.5, 2, 4, 8};
  std::vector<double> x_grid{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> upper_x_grid;  // default 4, 4.25, ..., 8
  std::vector<double> eps_grid{0.05, 0.1};
  std::uint64_t stirling_max = 1'000'000;

  // windows, sums, build-sets
  double x0 = 2;
  double eps0 = 0.25;
  double eps1 = 0.25;
  double window_eps = 0.2;
  double window_delta = 0.05;
  std::size_t sum_trials = 1000;
  double eta = 0.5;
  double demo_eps = 0.05;
  unsigned demo_k = 2;
  double demo_N = 0.125;
  std::uint64_t construction_budget = 2'000'000;

  // theorem
  std::uint64_t theorem_N = 1'000'000;
  std::vector<std::uint64_t> N_grid{10'000, 100'000, 1'000'000};
  std::vector<unsigned> moduli{2, 3, 5};
  std::string alpha = "sqrt2";
  std::uint64_t pairing_N = 1'000'000'000'000;

  // selberg
  std::vector<std::uint64_t> selberg_grid{1'000, 10'000, 100'000, 1'000'000};

  RunConfig();

  /// Settings that determine report contents (no paths, no worker count).
  Json to_json() const;
};

/// Unsigned integer in decimal, "a^b" or exact scientific ("1e6") form.
std::uint64_t parse_u64(const std::string& text);

/// Sets one key; throws ConfigInvalid naming the key.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// key = value lines, '#' comments. Errors carry "origin:line".
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Cross-field checks, including the work budget of the sieve range.
void validate(const RunConfig& cfg);

const std::vector<std::string>& suite_names();

SieveConfig sieve_config(const RunConfig& cfg);
std::unique_ptr<Universe> make_universe(const RunConfig& cfg, UniverseKind kind);

/// Artifacts shared between suites of one run.
class SuiteContext {
 public:
  explicit SuiteContext(const RunConfig& cfg) : cfg_(cfg) {}
  /// The relaxed demonstration pair on the synthetic universe, built once.
  const BuildOutcome& demo_pair();
  const Universe& synthetic_universe();

 private:
  const RunConfig& cfg_;
  std::unique_ptr<Universe> synthetic_;
  std::optional<BuildOutcome> demo_;
};

SuiteReport run_suite(const std::string& name, const RunConfig& cfg, SuiteContext& ctx);

struct RunResult {
  std::vector<SuiteReport> reports;
  Json summary;
  Json timings;
  int exit_code = 0;
};

/// Runs the selected suite(s), writes reports, summary.json and timings.json.
/// Exit code: 0 all checks pass, 1 a check failed, 3 a budget error stopped a suite.
RunResult run(const RunConfig& cfg);

/// 2 for configuration errors, 3 for budget errors, 1 otherwise.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace pnt
