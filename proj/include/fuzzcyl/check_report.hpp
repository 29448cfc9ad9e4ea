#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace fuzzcyl {

struct CheckResult {
  std::string relation;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

inline CheckResult make_check(std::string relation, double residual, double tolerance, std::string detail = {}) {
  // NaN never passes
  bool ok = residual <= tolerance;
  return {std::move(relation), residual, tolerance, ok, std::move(detail)};
}

inline bool all_pass(const std::vector<CheckResult>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.pass; });
}

inline double max_residual(const std::vector<CheckResult>& rs) {
  double m = 0.0;
  for (const auto& r : rs) m = std::max(m, r.residual);
  return m;
}

}  // namespace fuzzcyl
