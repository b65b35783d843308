#include "helpers.hpp"
#include "mfc/functors.hpp"

using namespace mfc;
using mfc::test::P;
using mfc::test::S;

namespace {

const ChartPtr M = Chart::coordinates("M", {{"x", Parity::even}});
const ChartPtr N = Chart::coordinates("N", {{"y", Parity::even}});

ThickMorphism make(const char* s, Kind k = Kind::even) {
  return mk_thick(M, N, k, P(s, generating_chart(M, N, k), 3), 3);
}

}  // namespace

TEST_CASE("tangent lifts") {
  CHECK(S(tangent_lift(make("x^2*q_y")).S) == "x^2*dot_q_y + 2*x*dot_x*q_y");
  CHECK(S(tangent_lift(make("x*q_y + 1/2*q_y^2")).S) == "x*dot_q_y + dot_x*q_y + dot_q_y*q_y");
  CHECK(tangent_lift(make("x^2*q_y")).kind == Kind::even);
}

TEST_CASE("antitangent lifts flip the kind") {
  const ThickMorphism a = antitangent_lift(make("x*q_y + 1/2*q_y^2"));
  CHECK(a.kind == Kind::odd);
  CHECK(S(a.S) == "x*par_q_y + par_x*q_y + par_q_y*q_y");
  const ThickMorphism b = antitangent_lift(make("x^2*ys_y", Kind::odd));
  CHECK(b.kind == Kind::even);
  CHECK(S(b.S) == "x^2*par_ys_y + 2*x*par_x*ys_y");
}

TEST_CASE("lifts of classical maps are the prolongations") {
  const ClassicalMap f{M, N, {P("x^2 + x", M)}};
  const ClassicalMap tf = tangent_prolongation(f);
  CHECK(S(tf.components[1]) == "dot_x + 2*x*dot_x");
  CHECK(S(base_map(tangent_lift(from_classical(f, Kind::even, 3))).components[1]) == "dot_x + 2*x*dot_x");
}

TEST_CASE("lifted morphisms satisfy the relation identity") {
  for (LiftKind k : {LiftKind::tangent, LiftKind::antitangent}) {
    CHECK(relation_check(lift(make("x*q_y + 1/2*q_y^2"), k)).passed());
    CHECK(relation_check(lift(make("x^2*ys_y + x*ys_y", Kind::odd), k)).passed());
  }
}

TEST_CASE("functoriality on the running example") {
  const ChartPtr Q = Chart::coordinates("P", {{"z", Parity::even}});
  const ThickMorphism psi =
      mk_thick(N, Q, Kind::even, P("y^2*q_z + 1/3*q_z^3", generating_chart(N, Q, Kind::even), 3), 3);
  for (LiftKind k : {LiftKind::tangent, LiftKind::antitangent})
    CHECK(check_functoriality(psi, make("x*q_y + 1/2*q_y^2"), k, 3).passed());
}

TEST_CASE("bundle morphism checks") {
  const Report r = check_bundle_morphism(make("x*q_y + 1/2*q_y^2"), P("y^2", N), 2);
  for (const auto& c : r.checks())
    if (c.name != "literal") CHECK_MESSAGE(c.passed, c.name);
  // The literal diagram holds for classical maps and fails for the running example.
  CHECK(bundle_morphism_literal_residual(make("x^2*q_y"), P("y^2", N), 2).is_zero());
  CHECK(S(bundle_morphism_literal_residual(make("x*q_y + 1/2*q_y^2"), P("y^2", N), 2)) == "-2*eps^2*x^2");
}
