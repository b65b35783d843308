#include "mfc/functors.hpp"

#include "mfc/superforms.hpp"

namespace mfc {

std::string_view to_string(LiftKind k) { return k == LiftKind::tangent ? "tangent" : "antitangent"; }

namespace {

std::vector<Variable> momenta_of(const Chart& c) {
  std::vector<Variable> out;
  for (const auto& v : c.variables())
    if (v.momentum_class()) out.push_back(v);
  return out;
}

ChartPtr base_part(const Chart& c) {
  std::vector<Variable> vars;
  for (const auto& v : c.variables())
    if (!v.momentum_class()) vars.push_back(v);
  return Chart::make(c.name(), std::move(vars));
}

// Lifted momenta: primed momenta conjugate to the old coordinates, then the old
// momenta conjugate to the primed coordinates.
std::vector<Variable> lift_momenta(const std::vector<Variable>& momenta, const Chart& coords,
                                   LiftKind k, int layer) {
  const bool tan = k == LiftKind::tangent;
  const std::string_view pre = tan ? kDotPrefix : kParPrefix;
  auto flip_role = [&](Role r) {
    if (tan) return r;
    return r == Role::momentum ? Role::antimomentum : Role::momentum;
  };
  std::vector<Variable> primed, old;
  for (const auto& m : momenta) {
    const Parity pz = coords[coords.index_of(m.conjugate)].parity;
    Variable p = m;
    p.name = std::string(pre) + m.name;
    p.origin = m.name;
    p.parity = tan ? m.parity : flip(m.parity);
    p.role = flip_role(m.role);
    p.sign = (tan || !is_odd(pz)) ? m.sign : -m.sign;
    p.layer = layer;
    primed.push_back(std::move(p));
    Variable o = m;
    o.role = flip_role(m.role);
    o.conjugate = std::string(pre) + m.conjugate;
    o.layer = layer;
    old.push_back(std::move(o));
  }
  primed.insert(primed.end(), old.begin(), old.end());
  return primed;
}

ChartPtr lift_phase(const Chart& phase, LiftKind k) {
  const ChartPtr base = base_part(phase);
  const ChartPtr lifted =
      extend_chart(*base, k == LiftKind::tangent ? BundleKind::T : BundleKind::PiT);
  return phase_chart(*lifted, lift_momenta(momenta_of(phase), *base, k, lifted->depth() + 1),
                     (k == LiftKind::tangent ? "T" : "PiT") + phase.name());
}

}  // namespace

ThickMorphism lift(const ThickMorphism& phi, LiftKind k) {
  const bool tan = k == LiftKind::tangent;
  const BundleKind bk = tan ? BundleKind::T : BundleKind::PiT;
  const std::string_view pre = tan ? kDotPrefix : kParPrefix;
  const ChartPtr src = extend_chart(*phi.source, bk);
  const ChartPtr tgt = extend_chart(*phi.target, bk);
  const ChartPtr sphase = lift_phase(*phi.source_phase, k);
  const ChartPtr tphase = lift_phase(*phi.target_phase, k);
  const ChartPtr G = phase_chart(*src, momenta_of(*tphase),
                                 "S(" + src->name() + "," + tgt->name() + ")");
  const SuperSeries S = embed(phi.S, G, phi.order);
  Substitution der;
  for (const auto& v : phi.S.chart()->variables())
    der.emplace(v.name, SuperSeries::variable(G, phi.order, std::string(pre) + v.name));
  const SuperSeries lifted = apply_derivation(S, der);
  return mk_thick(src, tgt, tan ? phi.kind : flip(phi.kind), lifted, phi.order, phi.strict, sphase,
                  tphase);
}

ThickMorphism tangent_lift(const ThickMorphism& phi) { return lift(phi, LiftKind::tangent); }
ThickMorphism antitangent_lift(const ThickMorphism& phi) { return lift(phi, LiftKind::antitangent); }

ClassicalMap tangent_prolongation(const ClassicalMap& phi) {
  const ChartPtr src = extend_chart(*phi.source, BundleKind::T);
  const ChartPtr tgt = extend_chart(*phi.target, BundleKind::T);
  Substitution der;
  for (const auto& v : phi.source->variables())
    der.emplace(v.name, SuperSeries::variable(src, 0, std::string(kDotPrefix) + v.name));
  ClassicalMap r{src, tgt, {}};
  std::vector<SuperSeries> dots;
  for (const auto& c : phi.components) {
    const SuperSeries e = embed(c, src, c.order());
    r.components.push_back(e);
    dots.push_back(apply_derivation(e, der));
  }
  r.components.insert(r.components.end(), dots.begin(), dots.end());
  return r;
}

SuperSeries bundle_morphism_literal_residual(const ThickMorphism& phi, const SuperSeries& g,
                                             int eps_order) {
  const ThickMorphism T = tangent_lift(phi);
  const SuperSeries lhs = pullback(T, embed(g, T.target), eps_order);
  return lhs - embed(pullback(phi, g, eps_order), lhs.chart(), eps_order);
}

Report check_bundle_morphism(const ThickMorphism& phi, const SuperSeries& g, int eps_order) {
  Report rep;
  const ThickMorphism T = tangent_lift(phi);
  const ChartPtr G = T.S.chart();

  // The lifted relation projects onto the original one.
  for (const auto& v : phi.S.chart()->variables()) {
    const SuperSeries lhs = partial(T.S, std::string(kDotPrefix) + v.name);
    rep.expect_zero("projection." + v.name, lhs - embed(partial(phi.S, v.name), G, T.order));
  }

  // Velocity-independent functions pull back through the base map.
  const SuperSeries lhs = pullback(T, embed(g, T.target), eps_order);
  const ChartPtr W = lhs.chart();
  const ClassicalMap phi0 = base_map(phi);
  Substitution sub;
  for (std::size_t i = 0; i < phi0.components.size(); ++i)
    sub.emplace((*phi.target)[i].name, phi0.components[i]);
  const SuperSeries classical = mul(SuperSeries::variable(W, eps_order, kEpsName),
                                    substitute(g, sub, W, eps_order));
  rep.expect_zero("base_projection", lhs - classical);

  // Tangent lift of functions intertwines the pullbacks.
  const SuperSeries gdot = time_derivative(embed(g, T.target));
  const SuperSeries lifted = pullback(T, gdot, eps_order);
  rep.expect_zero("velocity", lifted - embed(time_derivative(
                                             embed(pullback(phi, g, eps_order), W, eps_order)),
                                         W, eps_order));

  rep.expect_zero("literal", bundle_morphism_literal_residual(phi, g, eps_order));
  return rep;
}

Report check_functoriality(const ThickMorphism& psi, const ThickMorphism& phi, LiftKind k,
                           int order) {
  Report rep;
  const ThickMorphism lhs = lift(compose(psi, phi, order), k);
  const ThickMorphism rhs = compose(lift(psi, k), lift(phi, k), order);
  rep.expect("kind", lhs.kind == rhs.kind);
  rep.expect_zero(std::string(to_string(k)), difference(rhs.S, lhs.S));
  return rep;
}

}  // namespace mfc
