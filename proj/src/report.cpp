#include "qha/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace qha {

using nlohmann::json;

namespace {

// JSON has no infinities; non-finite values travel as strings.
json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double unnum(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    return std::nan("");
  }
  return j.get<double>();
}

json num_list(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

void SuiteConfig::validate() const {
  if (n < 2) throw DomainError("config: N must be >= 2");
  if (dims < 1) throw DomainError("config: dims must be >= 1");
  if (trials < 1) throw DomainError("config: trials must be >= 1");
  if (!(tol > 0.0)) throw DomainError("config: tolerance must be positive");
  if (ps.empty()) throw DomainError("config: empty p list");
  for (double p : ps) require_exponent(p, "config --p");
  for (double q : qs) require_exponent(q, "config --qexp");
  for (double e : eps)
    if (!(e > 0.0)) throw DomainError("config: epsilon values must be positive");
  if (torus_q < 1 || mesh < 2) throw DomainError("config: need torus q >= 1 and mesh >= 2");
}

json SuiteConfig::to_json() const {
  return {{"suite", suite}, {"n", n},          {"dims", dims},       {"p", num_list(ps)},
          {"q", num_list(qs)}, {"s", num_list(ss)}, {"theta", num_list(thetas)}, {"eps", num_list(eps)},
          {"trials", trials}, {"seed", seed},    {"tol", tol},         {"group", group},
          {"torus_p", torus_p}, {"torus_q", torus_q}, {"mesh", mesh}};
}

CheckRecord CheckRecord::from(const std::string& name, const InequalityReport& r) {
  CheckRecord c;
  c.name = name;
  c.trials = r.trials;
  c.violations = r.violations;
  c.min_ratio = r.trials ? r.min_ratio : 0.0;
  c.max_ratio = r.trials ? r.max_ratio : 0.0;
  c.empirical_constant = r.empirical_constant;
  c.max_error = r.max_error;
  return c;
}

bool Report::passed() const {
  if (!diagnostics.empty()) return false;
  for (const auto& c : checks)
    if (c.violations != 0) return false;
  return true;
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  diagnostics.insert(diagnostics.end(), other.diagnostics.begin(), other.diagnostics.end());
  plots.insert(plots.end(), other.plots.begin(), other.plots.end());
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "plotdata") return Format::Plotdata;
  throw DomainError("unknown format '" + name + "' (expected json, csv or plotdata)");
}

json to_json(const CheckRecord& c) {
  return {{"name", c.name},
          {"trials", c.trials},
          {"violations", c.violations},
          {"min_ratio", num(c.min_ratio)},
          {"max_ratio", num(c.max_ratio)},
          {"empirical_constant", num(c.empirical_constant)},
          {"max_error", num(c.max_error)},
          {"runtime_ms", c.runtime_ms},
          {"details", c.details}};
}

CheckRecord check_from_json(const json& j) {
  CheckRecord c;
  c.name = j.at("name").get<std::string>();
  c.trials = j.at("trials").get<std::size_t>();
  c.violations = j.at("violations").get<std::size_t>();
  c.min_ratio = unnum(j.at("min_ratio"));
  c.max_ratio = unnum(j.at("max_ratio"));
  c.empirical_constant = unnum(j.at("empirical_constant"));
  c.max_error = unnum(j.at("max_error"));
  c.runtime_ms = j.at("runtime_ms").get<double>();
  c.details = j.value("details", json::object());
  return c;
}

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json plots = json::array();
  for (const auto& p : r.plots) {
    json pts = json::array();
    for (const auto& [x, y] : p.points) pts.push_back({num(x), num(y)});
    plots.push_back({{"name", p.name}, {"x", p.x_label}, {"y", p.y_label}, {"points", pts}});
  }
  return {{"schema_version", kSchemaVersion},
          {"artifact_version", kArtifactVersion},
          {"suite", r.suite},
          {"config", r.config},
          {"checks", checks},
          {"plots", plots},
          {"diagnostics", r.diagnostics},
          {"verdict", r.passed() ? "pass" : "fail"},
          {"timestamp", r.timestamp}};
}

Report report_from_json(const json& j) {
  if (j.value("schema_version", 0) != kSchemaVersion) throw DomainError("report: unsupported schema version");
  Report r;
  r.suite = j.at("suite").get<std::string>();
  r.config = j.value("config", json::object());
  for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
  for (const auto& p : j.value("plots", json::array())) {
    PlotSeries s{p.at("name"), p.at("x"), p.at("y"), {}};
    for (const auto& pt : p.at("points")) s.points.emplace_back(unnum(pt[0]), unnum(pt[1]));
    r.plots.push_back(std::move(s));
  }
  r.diagnostics = j.value("diagnostics", std::vector<std::string>{});
  r.timestamp = j.value("timestamp", std::string{});
  return r;
}

std::string emit(const Report& r, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::Json:
      os << to_json(r).dump(2) << '\n';
      break;
    case Format::Csv:
      os << "suite,name,trials,violations,min_ratio,max_ratio,empirical_constant,max_error,runtime_ms\n";
      for (const auto& c : r.checks)
        os << r.suite << ',' << c.name << ',' << c.trials << ',' << c.violations << ',' << fmt(c.min_ratio) << ','
           << fmt(c.max_ratio) << ',' << fmt(c.empirical_constant) << ',' << fmt(c.max_error) << ','
           << fmt(c.runtime_ms) << '\n';
      break;
    case Format::Plotdata:
      // Blank-line separated two-column blocks, one per series.
      for (std::size_t i = 0; i < r.plots.size(); ++i) {
        const auto& p = r.plots[i];
        if (i) os << "\n\n";
        os << "# series " << p.name << "\n# " << p.x_label << ' ' << p.y_label << '\n';
        for (const auto& [x, y] : p.points) os << fmt(x) << ' ' << fmt(y) << '\n';
      }
      break;
  }
  return os.str();
}

std::string canonical_content(const Report& r) {
  json j = to_json(r);
  j.erase("timestamp");
  for (auto& c : j["checks"]) c.erase("runtime_ms");
  return j.dump();
}

}  // namespace qha
