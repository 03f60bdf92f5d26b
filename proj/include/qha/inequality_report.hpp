#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

namespace qha {

/// Outcome of a randomized inequality or identity check.
///
/// `ratio` is whatever the check divides (left side over right side for an
/// upper bound). `empirical_constant` is the observed stand-in for a constant
/// the theory leaves unspecified; for identity checks `max_error` holds the
/// largest absolute deviation seen.
struct InequalityReport {
  std::string suite;
  std::size_t trials = 0;
  double max_ratio = -std::numeric_limits<double>::infinity();
  double min_ratio = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  double empirical_constant = 0.0;
  double max_error = 0.0;

  explicit InequalityReport(std::string name = {}) : suite(std::move(name)) {}

  void record(double ratio, bool violated) {
    ++trials;
    if (std::isfinite(ratio)) {
      max_ratio = std::max(max_ratio, ratio);
      min_ratio = std::min(min_ratio, ratio);
    }
    if (violated) ++violations;
  }

  void record_error(double err, double tol) {
    max_error = std::max(max_error, err);
    record(err, !(err <= tol));
  }

  /// Folds another report in (trial counts add, extremes combine).
  void merge(const InequalityReport& o) {
    trials += o.trials;
    violations += o.violations;
    if (o.trials > 0 && std::isfinite(o.max_ratio)) max_ratio = std::max(max_ratio, o.max_ratio);
    if (o.trials > 0 && std::isfinite(o.min_ratio)) min_ratio = std::min(min_ratio, o.min_ratio);
    empirical_constant = std::max(empirical_constant, o.empirical_constant);
    max_error = std::max(max_error, o.max_error);
  }

  bool passed() const { return violations == 0; }
};

}  // namespace qha
