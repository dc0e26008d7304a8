#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pnt/error.hpp"
#include "pnt/suites.hpp"

using namespace pnt;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("integer parsing") {
  CHECK(parse_u64("42") == 42);
  CHECK(parse_u64("10^12") == 1'000'000'000'000ull);
  CHECK(parse_u64("2^32") == 4294967296ull);
  CHECK(parse_u64("1e6") == 1'000'000);
  CHECK(kind_of([] { parse_u64("-3"); }) == ErrorKind::ConfigInvalid);
  CHECK(kind_of([] { parse_u64("10^30"); }) == ErrorKind::ConfigInvalid);
}

TEST_CASE("config text with diagnostics") {
  RunConfig cfg;
  apply_config_text(cfg, "# comment\nseed = 9\nsigmas = 2, 4\nuniverse = real  # trailing\n", "t.cfg");
  CHECK(cfg.seed == 9);
  CHECK(cfg.sigmas == std::vector<double>{2, 4});
  CHECK(cfg.universe == UniverseKind::Real);
  try {
    apply_config_text(cfg, "seed = 1\n\nformat = xml\n", "t.cfg");
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigInvalid);
    CHECK(std::string(e.what()).find("t.cfg:3") != std::string::npos);
    CHECK(std::string(e.what()).find("format") != std::string::npos);
  }
  CHECK(kind_of([&] { apply_config_text(cfg, "nonsense\n", "x"); }) == ErrorKind::ConfigInvalid);
  CHECK(kind_of([&] { set_config_value(cfg, "no_such_key", "1"); }) == ErrorKind::ConfigInvalid);
}

TEST_CASE("validation") {
  RunConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.hi = parse_u64("10^12");
  CHECK(kind_of([&] { validate(cfg); }) == ErrorKind::RangeTooLarge);
  CHECK(exit_code_for(ErrorKind::RangeTooLarge) == 3);
  CHECK(exit_code_for(ErrorKind::ConfigInvalid) == 2);
  CHECK(exit_code_for(ErrorKind::ConstructionBug) == 1);
  RunConfig bad;
  bad.eta = 1.5;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::ConfigInvalid);
}

TEST_CASE("tk suite reports are byte-identical across runs and worker counts") {
  const auto base = std::filesystem::temp_directory_path() / "pnt_cli_test";
  std::filesystem::remove_all(base);
  std::string first;
  for (unsigned workers : {1u, 4u}) {
    RunConfig cfg;
    cfg.subcommand = "tk";
    cfg.trials = 30;
    cfg.seed = 7;
    cfg.workers = workers;
    cfg.output_dir = (base / std::to_string(workers)).string();
    const auto r = run(cfg);
    CHECK(r.exit_code == 0);
    const auto text = slurp(base / std::to_string(workers) / "tk.json");
    CHECK(!text.empty());
    if (first.empty()) {
      first = text;
    } else {
      CHECK(text == first);
    }
    CHECK(slurp(base / std::to_string(workers) / "summary.json").find("\"pass\": true") != std::string::npos);
  }
  RunConfig csv;
  csv.subcommand = "tk";
  csv.trials = 5;
  csv.format = Format::Csv;
  csv.output_dir = (base / "csv").string();
  run(csv);
  CHECK(std::filesystem::exists(base / "csv" / "tk.csv"));
  CHECK(std::filesystem::exists(base / "csv" / "tk.instances.csv"));
  std::filesystem::remove_all(base);
}
