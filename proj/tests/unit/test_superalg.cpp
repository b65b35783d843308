#include "helpers.hpp"
#include "mfc/superforms.hpp"
#include "mfc/testkit.hpp"

using namespace mfc;
using mfc::test::P;
using mfc::test::S;

TEST_CASE("odd variables anticommute and square to zero") {
  const ChartPtr c = test::chart_x_theta();
  const SuperSeries th = SuperSeries::variable(c, 0, "th");
  const SuperSeries et = SuperSeries::variable(c, 0, "et");
  CHECK(mul(th, et) == -mul(et, th));
  CHECK(mul(th, th).is_zero());
  CHECK(mul(SuperSeries::variable(c, 0, "x"), th) == mul(th, SuperSeries::variable(c, 0, "x")));
  CHECK(S(P("et*th", c)) == S(-P("th*et", c)));
}

TEST_CASE("parity of homogeneous and mixed series") {
  const ChartPtr c = test::chart_x_theta();
  CHECK(P("x*th + et", c).parity() == Parity::odd);
  CHECK(P("x^2 + th*et", c).parity() == Parity::even);
  CHECK_FALSE(P("x + th", c).parity().has_value());
  CHECK_FALSE(SuperSeries(c, 0).parity().has_value());
  CHECK(P("x + th", c).part(Parity::odd) == P("th", c));
}

TEST_CASE("left derivative") {
  const ChartPtr c = test::chart_x_theta();
  CHECK(partial(P("th*et", c), "th") == P("et", c));
  CHECK(partial(P("th*et", c), "et") == P("-th", c));
  CHECK(partial(P("x^3*th", c), "x") == P("3*x^2*th", c));
  CHECK(partial(P("y", c), "x").is_zero());
}

TEST_CASE("graded Leibniz rule and derivative symmetry on random series") {
  const ChartPtr c = test::chart_x_theta();
  Generator gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Parity pa = gen.coin() ? Parity::odd : Parity::even;
    const Parity pb = gen.coin() ? Parity::odd : Parity::even;
    const SuperSeries a = gen.series(c, 0, pa);
    const SuperSeries b = gen.series(c, 0, pb);
    for (std::size_t i = 0; i < c->size(); ++i) {
      const Parity pv = (*c)[i].parity;
      const SuperSeries lhs = partial(mul(a, b), i);
      const SuperSeries rhs =
          mul(partial(a, i), b) + mul(a, partial(b, i)) * Rational(koszul(pv, pa));
      CHECK(lhs == rhs);
      for (std::size_t j = 0; j < c->size(); ++j)
        CHECK(partial(partial(a, j), i) ==
              partial(partial(a, i), j) * Rational(koszul(pv, (*c)[j].parity)));
    }
  }
}

TEST_CASE("supercommutativity on random series") {
  const ChartPtr c = test::chart_x_theta();
  Generator gen(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Parity pa = gen.coin() ? Parity::odd : Parity::even;
    const Parity pb = gen.coin() ? Parity::odd : Parity::even;
    const SuperSeries a = gen.series(c, 0, pa), b = gen.series(c, 0, pb);
    CHECK(mul(a, b) == mul(b, a) * Rational(koszul(pa, pb)));
  }
}

TEST_CASE("substitution is an algebra morphism") {
  const ChartPtr c = test::chart_x_theta();
  Generator gen(13);
  for (int trial = 0; trial < 30; ++trial) {
    Substitution sigma;
    for (const auto& v : c->variables()) sigma.emplace(v.name, gen.series(c, 0, v.parity, 2, 3));
    const SuperSeries a = gen.series(c, 0, Parity::odd), b = gen.series(c, 0, Parity::even);
    CHECK(substitute(mul(a, b), sigma, c, 0) ==
          mul(substitute(a, sigma, c, 0), substitute(b, sigma, c, 0)));
    CHECK(substitute(a + b, sigma, c, 0) == substitute(a, sigma, c, 0) + substitute(b, sigma, c, 0));
  }
}

TEST_CASE("truncation is compatible with products") {
  const ChartPtr base = Chart::coordinates("M", {{"x", Parity::even}, {"th", Parity::odd}});
  const ChartPtr c = extend_chart(*base, BundleKind::Tstar);
  Generator gen(14);
  for (int trial = 0; trial < 30; ++trial) {
    const SuperSeries a = gen.series(c, 4, Parity::even), b = gen.series(c, 4, Parity::even);
    for (int n = 0; n <= 4; ++n)
      CHECK(truncate(mul(a, b), n) == truncate(mul(with_order(a, n), with_order(b, n)), n));
  }
}

TEST_CASE("weights and exponent caps") {
  Variable t = Variable::base("t", Parity::even);
  t.role = Role::parameter;
  t.max_exponent = 1;
  Variable p = Variable::base("p", Parity::even);
  p.role = Role::momentum;
  p.weight = 1;
  const ChartPtr c = Chart::make("C", {Variable::base("x", Parity::even), t, p});
  CHECK(mul(SuperSeries::variable(c, 2, "t"), SuperSeries::variable(c, 2, "t")).is_zero());
  CHECK(power(SuperSeries::variable(c, 2, "p"), 3).is_zero());
  CHECK_FALSE(power(SuperSeries::variable(c, 2, "p"), 2).is_zero());
  CHECK_FALSE(power(SuperSeries::variable(c, 2, "x"), 7).is_zero());
  CHECK(SuperSeries::variable(c, 0, "p").is_zero());
}

TEST_CASE("degree shifts, zero sets and derivations") {
  const ChartPtr c = test::chart_x_theta();
  CHECK(shift_degree(P("x^2*th + y", c), "x", -1) == P("x*th", c));
  CHECK(shift_degree(P("th", c), "x", 2) == P("x^2*th", c));
  const ChartPtr small = Chart::coordinates("m", {{"x", Parity::even}, {"et", Parity::odd}});
  const std::string gone[] = {"y", "th"};
  CHECK(set_zero(P("x*y + x*et + th*et", c), gone, small) == P("x*et", small));
  // Euler derivation counts degree.
  Substitution euler;
  for (const auto& v : c->variables()) euler.emplace(v.name, SuperSeries::variable(c, 0, v.name));
  CHECK(apply_derivation(P("x^2*th*et", c), euler) == P("4*x^2*th*et", c));
}

TEST_CASE("mixing charts is an error") {
  const ChartPtr a = test::chart_x_theta();
  const ChartPtr b = Chart::coordinates("N", {{"x", Parity::even}});
  CHECK_THROWS_AS(SuperSeries::variable(a, 0, "x") + SuperSeries::variable(b, 0, "x"), Error);
  CHECK_THROWS_AS(SuperSeries::variable(a, 0, "zz"), Error);
  CHECK(embed(SuperSeries::variable(b, 0, "x"), a) == SuperSeries::variable(a, 0, "x"));
}
