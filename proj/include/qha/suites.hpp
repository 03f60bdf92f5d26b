#pragma once

#include <string>
#include <vector>

#include "qha/report.hpp"

namespace qha {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// lp, duality, uncertainty, heat, plancherel, besov, ncg, hall, synthesis.
const std::vector<std::string>& suite_names();

/// Runs the named suite ("all" runs every suite in order). Trials are spread
/// over `threads` workers; the numerical content does not depend on it.
/// Unknown suite names throw UsageError; diagnostic failures inside a check
/// are recorded in Report::diagnostics.
Report run_suite(const SuiteConfig& cfg, unsigned threads = default_threads());

}  // namespace qha
