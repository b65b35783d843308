#include "mfc/qcalc.hpp"

#include "mfc/functors.hpp"

namespace mfc {

HomologicalField de_rham_field(const ChartPtr& c) {
  HomologicalField Q{c, {}};
  bool any = false;
  for (const auto& v : c->variables()) {
    auto p = c->find(std::string(kParPrefix) + v.name);
    if (p && (*c)[*p].origin == v.name) {
      Q.components.push_back(SuperSeries::variable(c, 0, (*c)[*p].name));
      any = true;
    } else {
      Q.components.emplace_back(c, 0);
    }
  }
  if (!any) throw Error("de_rham_field: chart '" + c->name() + "' has no antitangent level");
  return Q;
}

SuperSeries hamiltonian_of_field(const HomologicalField& Q, const ChartPtr& phase) {
  SuperSeries H(phase, 1);
  bool any = false;
  for (const auto& m : phase->variables()) {
    if (!m.momentum_class()) continue;
    auto a = Q.chart->find(m.conjugate);
    if (!a) throw Error("hamiltonian_of_field: '" + m.conjugate + "' is not a field coordinate");
    any = true;
    const SuperSeries& q = Q.components[*a];
    if (q.is_zero()) continue;
    H += mul(embed(q, phase, 1), SuperSeries::variable(phase, 1, m.name) * Rational(m.sign));
  }
  if (!any) throw Error("hamiltonian_of_field: chart '" + phase->name() + "' has no momenta");
  return H;
}

SuperSeries q_morphism_residual(const ThickMorphism& phi, const SuperSeries& H1,
                                const SuperSeries& H2) {
  if (!same_chart(H1.chart(), phi.source_phase) || !same_chart(H2.chart(), phi.target_phase))
    throw Error("q_morphism_residual: Hamiltonians must live on the phase charts of the morphism");
  const ChartPtr G = phi.S.chart();
  const int N = phi.order;
  Substitution s2;
  const auto Y = target_images(phi);
  for (std::size_t I = 0; I < Y.size(); ++I) s2.emplace((*phi.target)[I].name, Y[I]);
  Substitution s1;
  for (const auto& m : phi.source_phase->variables()) {
    if (!m.momentum_class()) continue;
    s1.emplace(m.name, partial(phi.S, m.conjugate) * Rational(m.sign));
  }
  return substitute(H2, s2, G, N) - substitute(H1, s1, G, N);
}

Report check_antitangent_q(const ThickMorphism& phi) {
  const ThickMorphism L = antitangent_lift(phi);
  const SuperSeries H1 = hamiltonian_of_field(de_rham_field(L.source), L.source_phase);
  const SuperSeries H2 = hamiltonian_of_field(de_rham_field(L.target), L.target_phase);
  const Structure st = L.kind == Kind::even ? Structure::even : Structure::odd;
  Report rep;
  rep.expect_zero("source_homological", poisson_bracket(H1, H1, st));
  rep.expect_zero("target_homological", poisson_bracket(H2, H2, st));
  rep.expect_zero("q_morphism", q_morphism_residual(L, H1, H2));
  return rep;
}

namespace {

SuperSeries eps_part(const SuperSeries& s, int k) {
  const std::size_t e = s.chart()->index_of(kEpsName);
  SuperSeries r(s.chart(), s.order());
  for (const auto& [m, c] : s.terms())
    if (m.e[e] == k) r.add_term(m, c);
  return r;
}

ChartPtr with_parameter(const Chart& c, const std::string& name, Parity p) {
  std::vector<Variable> vars(c.variables().begin(), c.variables().end());
  Variable t = Variable::base(name, p);
  t.role = Role::parameter;
  if (!is_odd(p)) t.max_exponent = 1;
  vars.push_back(std::move(t));
  return Chart::make(c.name() + "+" + name, std::move(vars));
}

// Left derivative in the parameter, then drop it from the chart.
SuperSeries first_order_in(const SuperSeries& s, const std::string& name) {
  std::vector<Variable> vars;
  for (const auto& v : s.chart()->variables())
    if (v.name != name) vars.push_back(v);
  const ChartPtr out = Chart::make(s.chart()->name(), std::move(vars));
  const std::string drop[] = {name};
  return set_zero(partial(s, name), drop, out);
}

}  // namespace

Report closedness_check(const ThickMorphism& phi, const SuperSeries& omega, int eps_order) {
  const ThickMorphism L = antitangent_lift(phi);
  const SuperSeries w = embed(omega, L.target);
  if (!de_rham(w, Level::partial).is_zero())
    throw Error("closedness_check: the form is not closed");
  const SuperSeries rho = pullback(L, w, eps_order);
  const SuperSeries drho = de_rham(rho, Level::partial);
  Report rep;
  for (int k = 0; k <= eps_order; ++k)
    rep.expect_zero("closed.eps" + std::to_string(k), eps_part(drho, k));
  return rep;
}

SuperSeries linearized_pullback(const ThickMorphism& phi, const SuperSeries& f, const SuperSeries& u,
                                int eps_order) {
  const Parity pf = f.parity().value_or(parity_of(phi.kind));
  const Parity pu = u.parity().value_or(Parity::even);
  if (pf != parity_of(phi.kind)) throw Error("linearized_pullback: base point has the wrong parity");
  const ChartPtr C = with_parameter(*phi.target, "t", pf + pu);
  const int n = eps_order + 1;
  const SuperSeries in = embed(f, C, n) + mul(SuperSeries::variable(C, n, "t"), embed(u, C, n));
  const SuperSeries P = first_order_in(pullback(phi, in, n), "t");
  return with_order(shift_degree(P, kEpsName, -1), eps_order);
}

Report derivative_homomorphism_check(const ThickMorphism& phi, const SuperSeries& f,
                                     const SuperSeries& g, const SuperSeries& h, int eps_order) {
  const SuperSeries hh = embed(h, g.chart(), g.order());
  const SuperSeries Dg = linearized_pullback(phi, f, g, eps_order);
  const SuperSeries Dh = linearized_pullback(phi, f, hh, eps_order);
  const SuperSeries Dgh = linearized_pullback(phi, f, mul(g, hh), eps_order);
  Report rep;
  rep.expect_zero("homomorphism", Dgh - mul(Dg, Dh));
  return rep;
}

SuperSeries intertwining_residual(const ThickMorphism& phi, const SuperSeries& omega, int eps_order,
                                  int sigma) {
  const ThickMorphism L = antitangent_lift(phi);
  const SuperSeries w = embed(omega, L.target, eps_order);
  const SuperSeries dw = de_rham(w, Level::partial);
  const ChartPtr C = with_parameter(*L.target, "eta", Parity::odd);
  const SuperSeries in =
      embed(w, C, eps_order) + mul(SuperSeries::variable(C, eps_order, "eta"), embed(dw, C, eps_order));
  const SuperSeries lin = first_order_in(pullback(L, in, eps_order), "eta");
  const SuperSeries rhs = de_rham(pullback(L, w, eps_order), Level::partial) * Rational(sigma);
  return difference(lin, rhs);
}

Report intertwining_check(const ThickMorphism& phi, const SuperSeries& omega, int eps_order) {
  Report rep;
  rep.expect_zero("intertwining", intertwining_residual(phi, omega, eps_order, kIntertwiningSign));
  return rep;
}

std::optional<int> calibrate_intertwining_sign(const ThickMorphism& classical,
                                               const SuperSeries& omega, int eps_order) {
  const bool plus = intertwining_residual(classical, omega, eps_order, 1).is_zero();
  const bool minus = intertwining_residual(classical, omega, eps_order, -1).is_zero();
  if (plus && minus) return 0;
  if (plus) return 1;
  if (minus) return -1;
  return std::nullopt;
}

}  // namespace mfc
