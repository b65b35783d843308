#include "helpers.hpp"
#include "mfc/testkit.hpp"

using namespace mfc;
using mfc::test::P;
using mfc::test::S;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

constexpr const char* kRunning = R"(
# running example
chart M { x: even }
chart N { y: even }
morphism F : M -> N kind=even order=3 { S = x*q_y + 1/2*q_y^2 }
function g on N { y^2 }
)";

}  // namespace

TEST_CASE("canonical serialization") {
  const ChartPtr c = test::chart_x_theta();
  CHECK(S(SuperSeries(c, 0)) == "0");
  CHECK(S(P("2/4*x - 3 + y*x^2", c)) == "-3 + 1/2*x + x^2*y");
  CHECK(S(P("th*et", c)) == S(P("-et*th", c)));
  CHECK(S(P("et*th", c)) == "-th*et");
  CHECK(S(P("(x + 1)^2", c)) == "1 + 2*x + x^2");
  CHECK(S(P("x^2 - x^2", c)) == "0");
}

TEST_CASE("round trip on random series") {
  const ChartPtr c = test::chart_x_theta();
  Generator gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const SuperSeries s = gen.series(c, 0, gen.coin() ? Parity::odd : Parity::even);
    CHECK(P(S(s).c_str(), c) == s);
  }
}

TEST_CASE("expression errors carry positions") {
  const ChartPtr c = test::chart_x_theta();
  CHECK_THROWS_WITH_AS(P("th^2", c), doctest::Contains("odd variable squared: 'th'"), ParseError);
  CHECK_THROWS_WITH_AS(P("x + zz", c), doctest::Contains("undeclared identifier"), ParseError);
  try {
    P("x +* y", c);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 4);
  }
}

TEST_CASE("workspace parsing") {
  const Workspace ws = parse_workspace(kRunning);
  CHECK(ws.charts.size() == 2);
  CHECK(S(ws.morphism("F").S) == "x*q_y + 1/2*q_y^2");
  CHECK(S(ws.function("g").value) == "y^2");
  CHECK(S(pullback(ws.morphism("F"), ws.function("g").value, ws.settings.eps_order)) ==
        "eps*x^2 + 2*eps^2*x^2");
  CHECK_THROWS_AS(ws.morphism("G"), Error);
}

TEST_CASE("settings and strictness") {
  const Workspace ws = parse_workspace(std::string("set order = 4\nset eps_order = 3\nset strict = false\n") +
                                       "chart M { x: even }\nchart N { y: even }\n" +
                                       "morphism F : M -> N kind=even order=4 { S = x + x*q_y }\n");
  CHECK(ws.settings.order == 4);
  CHECK(ws.settings.eps_order == 3);
  CHECK_FALSE(ws.settings.strict);
  CHECK_THROWS_AS(parse_workspace("chart M { x: even }\nchart N { y: even }\n"
                                  "morphism F : M -> N kind=even order=3 { S = x + x*q_y }\n"),
                  Error);
  CHECK_NOTHROW(parse_workspace("chart M { x: even }\nchart N { y: even }\n"
                                "morphism F : M -> N kind=even order=3 { S = x + x*q_y }\n",
                                false));
}

TEST_CASE("functions on bundles") {
  const Workspace ws = parse_workspace("chart N { y: even, et: odd }\nfunction w on N { y*par_y + et*par_et }\n");
  CHECK(ws.function("w").value.chart()->contains("par_y"));
  CHECK(parse_workspace("chart N { y: even }\nfunction v on N { y*dot_y }\n").function("v").value.chart()->contains("dot_y"));
  CHECK_THROWS_WITH_AS(parse_workspace("chart N { y: even }\nfunction v on N { dot_y*par_y }\n"),
                       doctest::Contains("mixes"), ParseError);
}

TEST_CASE("workspace errors carry line and column") {
  CHECK(parse_error("chart M { x: even }\nchart M { y: even }\n").starts_with("2:"));
  CHECK(parse_error("chart M { x: even }\nchart N { y: even }\nmorphism F : M -> Q kind=even order=3 { S = x }\n")
            .starts_with("3:"));
  CHECK(parse_error("chart M { x: bogus }\n").find("1:") == 0);
  CHECK(parse_error("chart M { eps: even }\n").find("reserved") != std::string::npos);
  CHECK(parse_error("chart M { x: even }\nfunction f on M { x $ 2 }\n").starts_with("2:"));
}
