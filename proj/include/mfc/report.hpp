#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfc/superalg.hpp"

namespace mfc {

struct Check {
  std::string name;
  bool passed = false;
  std::optional<SuperSeries> residual;  // set when the check failed on a nonzero residual
  std::string detail;
};

/// Named list of symbolic checks.
class Report {
 public:
  /// Record a residual check: passes iff the residual is exactly zero.
  void expect_zero(std::string name, const SuperSeries& residual);
  void expect(std::string name, bool ok, std::string detail = {});
  void append(const Report& other);
  void append(const Report& other, const std::string& prefix);

  const std::vector<Check>& checks() const { return checks_; }
  bool passed() const;
  std::size_t failures() const;

  /// One `CHECK <name> PASS|FAIL [residual=<expr>]` line per check.
  std::string format() const;

 private:
  std::vector<Check> checks_;
};

}  // namespace mfc
