#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qha/common.hpp"

#include "qha/inequality_report.hpp"

namespace qha {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

struct SuiteConfig {
  std::string suite = "lp";
  int n = 8;
  int dims = 2;
  std::vector<double> ps{1.0, 1.5, 2.0, 3.0, kInf};
  std::vector<double> qs{1.0, 2.0, kInf};
  std::vector<double> ss{0.5, 1.0, 2.0};
  std::vector<double> thetas{0.25, 0.5, 0.75};
  std::vector<double> eps{1e-6, 1e-4, 1e-2};
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::string group = "s3";
  int torus_p = 1;
  int torus_q = 3;
  int mesh = 24;
  std::string out;

  /// Throws DomainError on N < 2, trials < 1, tol <= 0 or an empty p list.
  void validate() const;
  nlohmann::json to_json() const;
};

/// One series of (x, y) points for plot export.
struct PlotSeries {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;
};

struct CheckRecord {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double empirical_constant = 0.0;
  double max_error = 0.0;
  double runtime_ms = 0.0;
  nlohmann::json details = nlohmann::json::object();

  static CheckRecord from(const std::string& name, const InequalityReport& r);
  bool operator==(const CheckRecord&) const = default;
};

struct Report {
  std::string suite;
  nlohmann::json config = nlohmann::json::object();
  std::vector<CheckRecord> checks;
  std::vector<std::string> diagnostics;
  std::vector<PlotSeries> plots;
  std::string timestamp;

  /// Pass iff every check has zero violations and no diagnostic was recorded.
  bool passed() const;
  void append(const Report& other);
};

enum class Format { Json, Csv, Plotdata };
Format parse_format(const std::string& name);

nlohmann::json to_json(const CheckRecord& c);
CheckRecord check_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

/// Serialized document in the requested format.
std::string emit(const Report& r, Format f);

/// JSON with runtime and timestamp stripped; equal for equal numerical content.
std::string canonical_content(const Report& r);

}  // namespace qha
