// pntcheck: command-line front end for the verification suites.
//
//   pntcheck run <suite|all> [--config FILE] [--seed S] [--budget B] ...
//
// Config file values are applied first; flags override them.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pnt/error.hpp"
#include "pnt/suites.hpp"

namespace {

int run_main(int argc, char** argv) {
  CLI::App app{"Desk-scale verification of the elementary prime number theorem argument"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run one suite or all of them");

  std::string suite = "all";
  std::optional<std::string> config_path;
  // Flag name -> config key; values stay strings so that "10^12" and "1e6" parse uniformly.
  const std::map<std::string, std::string> flag_keys{
      {"format", "format"},       {"seed", "seed"},         {"budget", "budget"},
      {"universe", "universe"},   {"output-dir", "output_dir"}, {"workers", "workers"},
      {"trials", "trials"},       {"lo", "lo"},             {"hi", "hi"},
      {"cache-dir", "cache_dir"}, {"eta", "eta"},           {"sum-trials", "sum_trials"},
      {"theorem-n", "theorem_N"}, {"binomial-max", "binomial_max"},
  };
  std::map<std::string, std::string> values;

  std::string choices;
  for (const auto& n : pnt::suite_names()) choices += n + "|";
  run->add_option("suite", suite, "Suite to run: " + choices + "all");
  run->add_option("--config", config_path, "key = value config file");
  for (const auto& [flag, key] : flag_keys) {
    run->add_option("--" + flag, values[key], "config key " + key);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  pnt::RunConfig cfg;
  if (const char* env = std::getenv("PNT_CACHE_DIR")) cfg.cache_dir = env;
  if (config_path) pnt::apply_config_file(cfg, *config_path);
  pnt::set_config_value(cfg, "subcommand", suite);
  for (const auto& [flag, key] : flag_keys) {
    if (run->count("--" + flag) > 0) pnt::set_config_value(cfg, key, values[key]);
  }

  const auto result = pnt::run(cfg);
  for (const auto& s : result.summary["suites"]) {
    std::cout << (s["pass"].get<bool>() ? "PASS " : "FAIL ") << s["suite"].get<std::string>() << "  "
              << s["passed"].get<std::size_t>() << "/" << s["checks"].get<std::size_t>() << "\n";
  }
  for (const auto& rep : result.reports) {
    for (const auto& c : rep.checks) {
      if (!c.pass) std::cout << "  failed " << rep.suite << "." << c.name << ": " << c.detail << "\n";
    }
  }
  std::cout << "reports in " << cfg.output_dir << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const pnt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pnt::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
