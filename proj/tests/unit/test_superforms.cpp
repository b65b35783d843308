#include "helpers.hpp"
#include "mfc/superforms.hpp"
#include "mfc/testkit.hpp"

using namespace mfc;
using mfc::test::P;
using mfc::test::S;

namespace {

ChartPtr line() { return Chart::coordinates("M", {{"x", Parity::even}}); }
ChartPtr line_odd() { return Chart::coordinates("M", {{"x", Parity::even}, {"th", Parity::odd}}); }

}  // namespace

TEST_CASE("extended charts name and weight their variables") {
  const ChartPtr c = extend_chart(line_odd(), {BundleKind::Tstar, BundleKind::T});
  std::vector<std::string> names;
  for (const auto& v : c->variables()) names.push_back(v.name);
  CHECK(names == std::vector<std::string>{"x", "th", "q_x", "q_th", "dot_x", "dot_th", "dot_q_x", "dot_q_th"});
  CHECK((*c)[c->index_of("q_th")].parity == Parity::odd);
  CHECK((*c)[c->index_of("q_x")].weight == 1);
  CHECK((*c)[c->index_of("dot_x")].weight == 0);
  const ChartPtr pit = extend_chart(*line_odd(), BundleKind::PiT);
  CHECK((*pit)[pit->index_of("par_x")].parity == Parity::odd);
  CHECK((*pit)[pit->index_of("par_th")].parity == Parity::even);
  CHECK_THROWS_AS(extend_chart(line(), {BundleKind::T, BundleKind::T, BundleKind::T}), Error);
}

TEST_CASE("differentials") {
  const ChartPtr tt = extend_chart(*line_odd(), BundleKind::T);
  CHECK(time_derivative(P("x^2*th", tt)) == P("x^2*dot_th + 2*x*th*dot_x", tt));
  const ChartPtr pit = extend_chart(*line_odd(), BundleKind::PiT);
  CHECK(S(de_rham(P("x^2*th", pit), Level::partial)) == "x^2*par_th - 2*x*th*par_x");
}

TEST_CASE("d and partial square to zero and anticommute") {
  const ChartPtr pit = with_forms(*extend_chart(*line_odd(), BundleKind::PiT));
  Generator gen(21);
  for (int trial = 0; trial < 40; ++trial) {
    const SuperSeries w = gen.series(pit, 0, gen.coin() ? Parity::odd : Parity::even, 3, 5);
    CHECK(de_rham(de_rham(w, Level::d), Level::d).is_zero());
    CHECK(de_rham(de_rham(w, Level::partial), Level::partial).is_zero());
    CHECK(de_rham(de_rham(w, Level::d), Level::partial) == -de_rham(de_rham(w, Level::partial), Level::d));
  }
}

TEST_CASE("time derivative commutes with d") {
  const ChartPtr tt = with_forms(*extend_chart(*line_odd(), BundleKind::T));
  Generator gen(22);
  for (int trial = 0; trial < 40; ++trial) {
    const SuperSeries w = gen.series(tt, 0, Parity::even, 3, 5);
    CHECK(de_rham(time_derivative(w), Level::d) == time_derivative(de_rham(w, Level::d)));
  }
}

TEST_CASE("Liouville forms and their differentials") {
  const SuperSeries theta = liouville(extend_chart(*line(), BundleKind::Tstar), Liouville::theta_E);
  CHECK(S(theta) == "q_x*d_x");
  CHECK(S(de_rham(theta, Level::d)) == "-d_x*d_q_x");
  const SuperSeries lambda = liouville(extend_chart(*line_odd(), BundleKind::PiTstar), Liouville::lambda_E);
  CHECK(de_rham(de_rham(lambda, Level::d), Level::d).is_zero());
  CHECK(lambda.parity() == Parity::even);
  CHECK(de_rham(lambda, Level::d).parity() == Parity::odd);
  CHECK(theta.parity() == Parity::odd);
}

TEST_CASE("canonical brackets") {
  const ChartPtr c = extend_chart(*line_odd(), BundleKind::Tstar);
  CHECK(S(poisson_bracket(P("x", c, 1), P("q_x", c, 1), Structure::even)) == "1");
  CHECK(poisson_bracket(P("x", c, 1), P("q_th", c, 1), Structure::even).is_zero());
  const SuperSeries H = P("x*q_x + th*q_th", c, 2);
  CHECK(poisson_bracket(H, H, Structure::even).is_zero());
  CHECK(S(poisson_bracket(P("q_th", c, 1), P("th", c, 1), Structure::even)) == "1");
}

TEST_CASE("bracket antisymmetry and Jacobi identity") {
  Generator gen(24);
  const ChartPtr base = line_odd();
  for (Structure st : {Structure::even, Structure::odd}) {
    const ChartPtr c = extend_chart(*base, st == Structure::even ? BundleKind::Tstar : BundleKind::PiTstar);
    const int shift = st == Structure::even ? 0 : 1;
    auto par = [&](const SuperSeries& a) { return bit(*a.parity()) + shift; };
    for (int trial = 0; trial < 30; ++trial) {
      SuperSeries f = gen.series(c, 6, gen.coin() ? Parity::odd : Parity::even, 3, 3);
      SuperSeries g = gen.series(c, 6, gen.coin() ? Parity::odd : Parity::even, 3, 3);
      SuperSeries h = gen.series(c, 6, gen.coin() ? Parity::odd : Parity::even, 3, 3);
      if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
      const int pf = par(f), pg = par(g), ph = par(h);
      const auto sgn = [](int k) { return Rational(k % 2 ? -1 : 1); };
      CHECK(poisson_bracket(f, g, st) == -sgn(pf * pg) * poisson_bracket(g, f, st));
      const SuperSeries jac = sgn(pf * ph) * poisson_bracket(f, poisson_bracket(g, h, st), st) +
                              sgn(pg * pf) * poisson_bracket(g, poisson_bracket(h, f, st), st) +
                              sgn(ph * pg) * poisson_bracket(h, poisson_bracket(f, g, st), st);
      CHECK(jac.is_zero());
    }
  }
}

TEST_CASE("prolonged coordinate changes") {
  const ChartPtr M = line();
  const ChartPtr T = extend_chart(*M, BundleKind::Tstar);
  Substitution scale{{"x", P("2*x", M)}};
  const Substitution a = prolong_coordinate_change(scale, T, 3);
  CHECK(S(a.at("x")) == "2*x");
  CHECK(S(a.at("q_x")) == "1/2*q_x");
  Substitution bend{{"x", P("x + x^2", M)}};
  const Substitution b = prolong_coordinate_change(bend, T, 2);
  CHECK(S(b.at("q_x")) == "q_x - 2*x*q_x + 4*x^2*q_x");
  Substitution singular{{"x", P("x^2", M)}};
  CHECK_THROWS_AS(prolong_coordinate_change(singular, T, 2), Error);
}

TEST_CASE("Liouville invariance and a negative control") {
  const ChartPtr M = line_odd();
  const ChartPtr T = extend_chart(*M, BundleKind::Tstar);
  Generator gen(23);
  const SuperSeries theta = liouville(T, Liouville::theta_E);
  for (int trial = 0; trial < 10; ++trial) {
    const Substitution full = prolong_coordinate_change(gen.coordinate_change(M), T, 5);
    CHECK(truncate_base_degree(substitute_form(theta, full, T) - theta, 3).is_zero());
  }
  // Moving x without transforming the momenta breaks invariance.
  Substitution naive{{"x", P("x + x^2", T)}};
  CHECK_FALSE(truncate_base_degree(substitute_form(theta, naive, T) - theta, 3).is_zero());
}

TEST_CASE("identifications hold on small charts") {
  const ChartPtr bases[] = {line(), line_odd(),
                            Chart::coordinates("M", {{"x", Parity::even}, {"y", Parity::even}, {"th", Parity::odd}})};
  for (auto which : kAllIdentifications)
    for (const auto& b : bases) {
      const Report r = verify_identification(which, b);
      INFO(to_string(which), "\n", r.format());
      CHECK(r.passed());
      CHECK_FALSE(r.checks().empty());
    }
}

TEST_CASE("Mackenzie-Xu table on a line") {
  const Identification id = make_identification(IdentificationCase::MX, line());
  CHECK(S(id.table.at("w_x")) == "q_u_x");
  CHECK(S(id.table.at("q_w_x")) == "-u_x");
}
