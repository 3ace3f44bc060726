#include "rpsym/check.hpp"

#include <algorithm>

#include "rpsym/error.hpp"

namespace rpsym {

void CheckResult::require_zero(const std::string& where, std::vector<Expr> summands) {
  Expr total;
  for (const auto& s : summands) total += s;
  if (!total.is_zero() && passed) {
    passed = false;
    detail = where + ": residual " + canonical_text(total);
  }
  instances.push_back(std::move(summands));
}

void CheckResult::require_equal(const std::string& where, const Expr& lhs, const Expr& rhs) {
  require_zero(where, {lhs, -rhs});
}

std::size_t numeric_failures(const CheckResult& check, const Point& point, std::size_t* skipped) {
  std::size_t failures = 0;
  std::size_t poles = 0;
  for (const auto& summands : check.instances) {
    try {
      Rational total;
      for (const auto& s : summands) total += evaluate(s, point);
      if (!total.is_zero()) ++failures;
    } catch (const DomainError&) {
      ++poles;
    }
  }
  if (skipped) *skipped = poles;
  return failures;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace rpsym
