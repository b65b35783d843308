#pragma once

// Seeded property suites behind `mfc verify`.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mfc/report.hpp"

namespace mfc {

struct SuiteOptions {
  std::uint64_t seed = 1;
  int trials = 20;
  int order = 3;
};

const std::vector<std::string>& suite_names();

/// Throws Error for an unknown suite.
Report run_suite(std::string_view name, const SuiteOptions& options);

Report identification_suite(const SuiteOptions& o);
Report functoriality_suite(const SuiteOptions& o);
Report qmorphism_suite(const SuiteOptions& o);
Report pullback_suite(const SuiteOptions& o);

}  // namespace mfc
