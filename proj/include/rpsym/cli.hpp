#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace rpsym {

/// Ordered list of (slash-separated key, value) entries plus warnings.
class Report {
 public:
  void add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }
  void warn(std::string text) { warnings_.push_back(std::move(text)); }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Machine form: one `key = value` line per entry, warnings last as
  /// `warning/<i> = text`. Human form groups entries under their first key
  /// segment.
  std::string render(bool machine) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::string> warnings_;
};

/// Runs the command line `args` (without the program name). Exit status:
/// 0 success, 1 input error, 2 internal invariant failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rpsym
