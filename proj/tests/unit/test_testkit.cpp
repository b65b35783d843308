#include "helpers.hpp"
#include "mfc/suites.hpp"
#include "mfc/testkit.hpp"

using namespace mfc;
using mfc::test::P;
using mfc::test::S;

TEST_CASE("generators are deterministic") {
  Generator a(5), b(5), c(6);
  const ChartPtr ca = a.chart("M", "x", "th"), cb = b.chart("M", "x", "th");
  CHECK(ca->same_layout(*cb));
  const ChartPtr n = Chart::coordinates("N", {{"y", Parity::even}});
  CHECK(S(a.morphism(ca, n, Kind::even, 3).S) == S(b.morphism(cb, n, Kind::even, 3).S));
  std::string sa, sc;
  for (int i = 0; i < 5; ++i) {
    sa += S(a.series(n, 0, Parity::even));
    sc += S(c.series(n, 0, Parity::even));
  }
  CHECK(sa != sc);
}

TEST_CASE("random morphisms are normalized") {
  Generator gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const ChartPtr m = gen.chart("M", "x", "th"), n = gen.chart("N", "y", "et");
    for (Kind k : {Kind::even, Kind::odd}) {
      const ThickMorphism phi = gen.morphism(m, n, k, 3);
      CHECK(phi.S.has_parity(parity_of(k)));
      CHECK(relation_check(phi).passed());
    }
  }
}

TEST_CASE("coordinate changes are invertible") {
  Generator gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const ChartPtr c = gen.chart("M", "x", "th");
    const Substitution ch = gen.coordinate_change(c);
    CHECK(ch.size() == c->size());
    for (const auto& v : c->variables()) CHECK(ch.at(v.name).has_parity(v.parity));
  }
}

TEST_CASE("classical oracle") {
  const ChartPtr a = Chart::coordinates("A", {{"x", Parity::even}, {"th", Parity::odd}});
  const ChartPtr b = Chart::coordinates("B", {{"y", Parity::even}, {"et", Parity::odd}});
  const ClassicalMap f{a, b, {P("x", a), P("x*th", a)}};
  CHECK(S(oracle_pullback_classical(f, P("y*et", b))) == "x^2*th");
  CHECK(S(oracle_pullback_classical(f, P("y^2 + 1", b))) == "1 + x^2");
}

TEST_CASE("naive oracle on the running example") {
  const ChartPtr M = Chart::coordinates("M", {{"x", Parity::even}});
  const ChartPtr N = Chart::coordinates("N", {{"y", Parity::even}});
  const ThickMorphism phi =
      mk_thick(M, N, Kind::even, P("x*q_y + 1/2*q_y^2", generating_chart(M, N, Kind::even), 3), 3);
  CHECK(S(oracle_pullback_naive(phi, P("y^2", N), 2)) == "eps*x^2 + 2*eps^2*x^2");
  CHECK(S(oracle_pullback_naive(phi, P("y^2", N), 3)) == S(pullback(phi, P("y^2", N), 3)));
}

TEST_CASE("suites run and pass on a small budget") {
  for (const auto& name : suite_names()) {
    const Report r = run_suite(name, {.seed = 3, .trials = 5, .order = 3});
    INFO(name, "\n", r.format());
    CHECK(r.passed());
  }
  CHECK_THROWS_AS(run_suite("nope", {}), Error);
}
