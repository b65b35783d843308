#pragma once

#include <doctest.h>

#include "mfc/textio.hpp"

namespace mfc::test {

inline ChartPtr chart_x_theta() {
  return Chart::coordinates("M", {{"x", Parity::even}, {"y", Parity::even}, {"th", Parity::odd},
                                  {"et", Parity::odd}});
}

inline SuperSeries P(const char* text, const ChartPtr& c, int order = 0) {
  return parse_expression(text, c, order);
}

inline std::string S(const SuperSeries& s) { return serialize(s); }

}  // namespace mfc::test
