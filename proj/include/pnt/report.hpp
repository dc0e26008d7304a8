#pragma once
// Suite reports: named pass/fail checks plus tables, written as JSON or CSV.

#include <json.hpp>

#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include "pnt/exact.hpp"

namespace pnt {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

Format parse_format(const std::string& s);
std::string to_string(Format f);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::deque<Table> tables;  // deque: references from table() stay valid
  Json info = Json::object();

  void check(std::string name, bool pass, std::string detail = {});
  Table& table(std::string name, std::vector<std::string> columns);
  bool pass() const noexcept;
  std::size_t passed() const noexcept;
  Json to_json() const;
};

/// {"num": "...", "den": "..."}; strings keep every digit.
Json rational_json(const Rational& q);

/// Shortest round-trip decimal for a double (JSON number syntax).
std::string format_double(double v);

/// One CSV field; quoted when it contains a comma, quote or newline.
std::string csv_field(const Json& v);

/// Writes <suite>.json, or <suite>.csv with the checks and <suite>.<table>.csv
/// per table. Returns the files written.
std::vector<std::filesystem::path> write_report(const SuiteReport& report, const std::filesystem::path& dir,
                                                Format format);

/// Writes `value` to `path` with two-space indentation and a trailing newline.
void write_json_file(const Json& value, const std::filesystem::path& path);

}  // namespace pnt
