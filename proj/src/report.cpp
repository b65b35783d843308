#include "mfc/report.hpp"

#include <algorithm>

#include "mfc/textio.hpp"

namespace mfc {

void Report::expect_zero(std::string name, const SuperSeries& residual) {
  Check c{std::move(name), residual.is_zero(), std::nullopt, {}};
  if (!c.passed) c.residual = residual;
  checks_.push_back(std::move(c));
}

void Report::expect(std::string name, bool ok, std::string detail) {
  checks_.push_back({std::move(name), ok, std::nullopt, std::move(detail)});
}

void Report::append(const Report& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

void Report::append(const Report& other, const std::string& prefix) {
  for (auto c : other.checks_) {
    c.name = prefix + "." + c.name;
    checks_.push_back(std::move(c));
  }
}

bool Report::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

std::size_t Report::failures() const {
  return std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return !c.passed; });
}

std::string Report::format() const {
  std::string out;
  for (const auto& c : checks_) {
    out += "CHECK " + c.name + (c.passed ? " PASS" : " FAIL");
    if (c.residual) out += " residual=" + serialize(*c.residual);
    out += '\n';
  }
  return out;
}

}  // namespace mfc
