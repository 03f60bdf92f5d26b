#pragma once

#include <vector>

#include "qha/phase_space.hpp"

inline std::vector<qha::Complex> values_of(const qha::GridFn& f) { return {f.values().begin(), f.values().end()}; }

inline double max_diff(const std::vector<qha::Complex>& a, const std::vector<qha::Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}
