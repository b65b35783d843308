#include "helpers.hpp"
#include "mfc/functors.hpp"
#include "mfc/qcalc.hpp"
#include "mfc/testkit.hpp"

using namespace mfc;
using mfc::test::P;
using mfc::test::S;

namespace {

const ChartPtr M = Chart::coordinates("M", {{"x", Parity::even}, {"th", Parity::odd}});
const ChartPtr N = Chart::coordinates("N", {{"y", Parity::even}, {"et", Parity::odd}});

ThickMorphism make(const char* s, Kind k = Kind::even) {
  return mk_thick(M, N, k, P(s, generating_chart(M, N, k), 3), 3);
}

}  // namespace

TEST_CASE("de Rham field") {
  const ChartPtr pit = extend_chart(*M, BundleKind::PiT);
  const HomologicalField Q = de_rham_field(pit);
  REQUIRE(Q.components.size() == pit->size());
  CHECK(S(Q.components[pit->index_of("x")]) == "par_x");
  CHECK(S(Q.components[pit->index_of("th")]) == "par_th");
  CHECK(Q.components[pit->index_of("par_x")].is_zero());
}

TEST_CASE("antitangent lifts are Q-morphisms") {
  for (const char* s : {"x*q_y + 1/2*q_y^2", "x^2*q_y + th*q_et + x*th*q_y*q_et", "q_y + th*q_y*q_et"})
    CHECK_MESSAGE(check_antitangent_q(make(s)).passed(), s);
  for (const char* s : {"x*ys_y + th*ys_et", "x^2*th*ys_et + x*ys_y*ys_et"})
    CHECK_MESSAGE(check_antitangent_q(make(s, Kind::odd)).passed(), s);
}

TEST_CASE("a corrupted lift is not a Q-morphism") {
  const ThickMorphism L = antitangent_lift(make("x*q_y + 1/2*q_y^2"));
  const SuperSeries H1 = hamiltonian_of_field(de_rham_field(L.source), L.source_phase);
  const SuperSeries H2 = hamiltonian_of_field(de_rham_field(L.target), L.target_phase);
  CHECK(q_morphism_residual(L, H1, H2).is_zero());
  // Negate the terms carrying primed momenta.
  const Chart& G = *L.S.chart();
  SuperSeries S2(L.S.chart(), L.order);
  for (const auto& [m, c] : L.S.terms()) {
    bool primed = false;
    for (std::size_t i = 0; i < m.e.size(); ++i)
      if (m.e[i] && G[i].momentum_class() && !G[i].origin.empty()) primed = true;
    S2.add_term(m, primed ? -c : c);
  }
  const ThickMorphism bad =
      mk_thick(L.source, L.target, L.kind, S2, L.order, true, L.source_phase, L.target_phase);
  CHECK_FALSE(q_morphism_residual(bad, H1, H2).is_zero());
}

TEST_CASE("closed forms pull back to closed forms") {
  const ThickMorphism phi = make("x*q_y + 1/2*q_y^2 + th*q_et");
  const ChartPtr pit = antitangent_lift(phi).target;
  const SuperSeries exact = de_rham(P("y^3", pit), Level::partial);
  CHECK(closedness_check(phi, exact, 2).passed());
  CHECK_THROWS_WITH_AS(closedness_check(phi, P("y*et*par_et", pit), 2), doctest::Contains("not closed"), Error);
}

TEST_CASE("linearized pullback of a classical map is the ordinary pullback") {
  const ClassicalMap f{M, N, {P("x + x^2", M), P("x*th", M)}};
  const ThickMorphism phi = from_classical(f, Kind::even, 3);
  for (const char* u : {"y^3", "y*et", "et"}) {
    const SuperSeries want = oracle_pullback_classical(f, P(u, N));
    CHECK(difference(linearized_pullback(phi, P("y^2", N), P(u, N), 2), want).is_zero());
  }
}

TEST_CASE("derivative homomorphism") {
  const ThickMorphism phi = make("x*q_y + 1/2*q_y^2 + th*q_et");
  CHECK(derivative_homomorphism_check(phi, P("y^2", N), P("y", N), P("et", N), 2).passed());
  CHECK(derivative_homomorphism_check(phi, P("y^3", N), P("et", N), P("y*et", N), 2).passed());
}

TEST_CASE("intertwining sign") {
  const ClassicalMap f{M, N, {P("x + x^2", M), P("x*th", M)}};
  const ThickMorphism phi = from_classical(f, Kind::even, 3);
  const ChartPtr pit = antitangent_lift(phi).target;
  const SuperSeries w = P("y*par_y + et*par_et", pit);
  const auto s = calibrate_intertwining_sign(phi, w, 2);
  REQUIRE(s.has_value());
  CHECK((*s == 0 || *s == kIntertwiningSign));
  CHECK(intertwining_check(make("x*q_y + 1/2*q_y^2 + th*q_et"), w, 2).passed());
}
