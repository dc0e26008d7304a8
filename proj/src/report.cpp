#include "pnt/report.hpp"

#include <algorithm>
#include <fstream>

#include "pnt/error.hpp"

namespace pnt {
namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) raise(ErrorKind::Io, "write failed for " + path.string());
}

std::string csv_line(const std::vector<Json>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line + '\n';
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  raise(ErrorKind::ConfigInvalid, "format must be csv or json, got '" + s + "'");
}

std::string to_string(Format f) { return f == Format::Json ? "json" : "csv"; }

void SuiteReport::check(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

Table& SuiteReport::table(std::string name, std::vector<std::string> columns) {
  tables.push_back({std::move(name), std::move(columns), {}});
  return tables.back();
}

bool SuiteReport::pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::size_t SuiteReport::passed() const noexcept {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
}

Json SuiteReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["pass"] = pass();
  Json cs = Json::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = std::move(cs);
  Json ts = Json::object();
  for (const auto& t : tables) {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json row = Json::object();
      for (std::size_t i = 0; i < t.columns.size() && i < r.size(); ++i) row[t.columns[i]] = r[i];
      rows.push_back(std::move(row));
    }
    ts[t.name] = std::move(rows);
  }
  j["tables"] = std::move(ts);
  j["info"] = info;
  return j;
}

Json rational_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

std::string format_double(double v) { return Json(v).dump(); }

std::string csv_field(const Json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_object() && v.contains("num") && v.contains("den")) {
    s = v["num"].get<std::string>() + "/" + v["den"].get<std::string>();
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::vector<std::filesystem::path> write_report(const SuiteReport& report, const std::filesystem::path& dir,
                                                Format format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) raise(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> files;
  if (format == Format::Json) {
    files.push_back(dir / (report.suite + ".json"));
    write_json_file(report.to_json(), files.back());
    return files;
  }
  std::string text = "check,pass,detail\n";
  for (const auto& c : report.checks) text += csv_line({c.name, c.pass ? "PASS" : "FAIL", c.detail});
  files.push_back(dir / (report.suite + ".csv"));
  write_text(files.back(), text);
  for (const auto& t : report.tables) {
    std::vector<Json> header(t.columns.begin(), t.columns.end());
    std::string body = csv_line(header);
    for (const auto& r : t.rows) body += csv_line(r);
    files.push_back(dir / (report.suite + "." + t.name + ".csv"));
    write_text(files.back(), body);
  }
  return files;
}

void write_json_file(const Json& value, const std::filesystem::path& path) { write_text(path, value.dump(2) + "\n"); }

}  // namespace pnt
