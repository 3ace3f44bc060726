#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rpsym/expr.hpp"

namespace rpsym {

/// Outcome of one symbolic identity family. Each instance is a list of
/// summands whose total must vanish; the instances are kept so that callers
/// can re-check them numerically at sample points.
struct CheckResult {
  explicit CheckResult(std::string check_name = {}) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  std::string detail;
  std::vector<std::vector<Expr>> instances;

  /// Adds one instance; the first failing instance is described in `detail`.
  void require_zero(const std::string& where, std::vector<Expr> summands);
  /// Adds one instance asserting lhs = rhs.
  void require_equal(const std::string& where, const Expr& lhs, const Expr& rhs);
};

/// Number of instances whose summands, evaluated at `point`, do not total
/// zero. Instances with a pole at `point` are skipped and counted in `skipped`.
std::size_t numeric_failures(const CheckResult& check, const Point& point, std::size_t* skipped = nullptr);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace rpsym
