#include "mfc/morphisms.hpp"

#include <algorithm>

#include "mfc/superforms.hpp"

namespace mfc {

std::string_view to_string(Kind k) { return k == Kind::even ? "even" : "odd"; }

std::vector<Variable> conjugate_momenta(const Chart& c, Kind k) {
  std::vector<Variable> out;
  for (const auto& v : c.variables()) {
    if (v.form || v.momentum_class())
      throw Error("conjugate_momenta: chart '" + c.name() + "' already carries momenta or forms");
    Variable m;
    const bool even = k == Kind::even;
    m.name = std::string(even ? kMomentumPrefix : kAntimomentumPrefix) + v.name;
    m.parity = even ? v.parity : flip(v.parity);
    m.role = even ? Role::momentum : Role::antimomentum;
    m.weight = 1;
    m.conjugate = v.name;
    m.layer = c.depth() + 1;
    out.push_back(std::move(m));
  }
  return out;
}

ChartPtr phase_chart(const Chart& base, const std::vector<Variable>& momenta, std::string name) {
  std::vector<Variable> vars;
  for (const auto& v : base.variables())
    if (!v.momentum_class()) vars.push_back(v);
  vars.insert(vars.end(), momenta.begin(), momenta.end());
  return Chart::make(std::move(name), std::move(vars));
}

namespace {

std::vector<Variable> momenta_of(const Chart& c) {
  std::vector<Variable> out;
  for (const auto& v : c.variables())
    if (v.momentum_class()) out.push_back(v);
  return out;
}

Rational sign_of(int s) { return Rational(s); }

// Factor s_I relating Y^I to the derivative in the momentum conjugate to it.
Rational relation_factor(Kind k, Parity target) {
  return (k == Kind::even && is_odd(target)) ? Rational(-1) : Rational(1);
}

}  // namespace

std::vector<std::size_t> ThickMorphism::momentum_slots() const {
  const Chart& g = *S.chart();
  std::vector<std::size_t> slots;
  for (const auto& y : target->variables()) {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i].momentum_class() && g[i].conjugate == y.name) found = i;
    if (!found) throw Error("morphism: no momentum conjugate to '" + y.name + "'");
    slots.push_back(*found);
  }
  return slots;
}

ChartPtr generating_chart(const ChartPtr& source, const ChartPtr& target, Kind k) {
  return phase_chart(*source, conjugate_momenta(*target, k),
                     "S(" + source->name() + "," + target->name() + ")");
}

ThickMorphism mk_thick(const ChartPtr& source, const ChartPtr& target, Kind kind,
                       const SuperSeries& S, int order, bool strict) {
  return mk_thick(source, target, kind, S, order, strict,
                  phase_chart(*source, conjugate_momenta(*source, kind), "phase(" + source->name() + ")"),
                  phase_chart(*target, conjugate_momenta(*target, kind), "phase(" + target->name() + ")"));
}

ThickMorphism mk_thick(const ChartPtr& source, const ChartPtr& target, Kind kind,
                       const SuperSeries& S, int order, bool strict, ChartPtr source_phase,
                       ChartPtr target_phase) {
  const ChartPtr G = phase_chart(*source, momenta_of(*target_phase),
                                 "S(" + source->name() + "," + target->name() + ")");
  for (const auto& m : momenta_of(*target_phase))
    if (!target->contains(m.conjugate))
      throw Error("mk_thick: momentum '" + m.name + "' is conjugate to no target coordinate");
  const Chart& sc = *S.chart();
  std::vector<bool> used(sc.size(), false);
  for (const auto& [m, c] : S.terms())
    for (std::size_t i = 0; i < sc.size(); ++i)
      if (m.e[i]) used[i] = true;
  for (std::size_t i = 0; i < sc.size(); ++i)
    if (used[i] && !G->contains(sc[i].name))
      throw Error("mk_thick: variable-domain violation: '" + sc[i].name +
                  "' is neither a source coordinate nor a target momentum");
  if (!S.is_zero() && !S.has_parity(parity_of(kind)))
    throw Error(std::string("mk_thick: parity mismatch: ") + std::string(to_string(kind)) +
                " kind needs an " + std::string(to_string(parity_of(kind))) + " generating function");
  SuperSeries s = embed(S, G, order);
  if (strict) {
    for (const auto& [m, c] : s.terms()) {
      bool momentum = false, base = false;
      for (std::size_t i = 0; i < G->size(); ++i) {
        if (!m.e[i]) continue;
        ((*G)[i].momentum_class() ? momentum : base) = true;
      }
      if (base && !momentum)
        throw Error("mk_thick: S at zero momenta is not constant (strict mode)");
    }
  }
  ThickMorphism phi{source, target, kind, std::move(s), order, strict,
                    std::move(source_phase), std::move(target_phase)};
  phi.momentum_slots();
  return phi;
}

ThickMorphism from_classical(const ClassicalMap& phi, Kind kind, int order) {
  const ChartPtr G = generating_chart(phi.source, phi.target, kind);
  SuperSeries S(G, order);
  const auto momenta = conjugate_momenta(*phi.target, kind);
  for (std::size_t i = 0; i < phi.components.size(); ++i)
    S += mul(embed(phi.components[i], G, order), SuperSeries::variable(G, order, momenta[i].name));
  return mk_thick(phi.source, phi.target, kind, S, order, true);
}

ClassicalMap identity_map(const ChartPtr& c) {
  ClassicalMap id{c, c, {}};
  for (const auto& v : c->variables()) id.components.push_back(SuperSeries::variable(c, 0, v.name));
  return id;
}

ClassicalMap compose(const ClassicalMap& psi, const ClassicalMap& phi) {
  if (!same_chart(psi.source, phi.target)) throw Error("compose: chart mismatch");
  Substitution sub;
  for (std::size_t i = 0; i < phi.components.size(); ++i)
    sub.emplace((*phi.target)[i].name, phi.components[i]);
  ClassicalMap r{phi.source, psi.target, {}};
  for (const auto& c : psi.components) r.components.push_back(substitute(c, sub, phi.source, c.order()));
  return r;
}

std::vector<SuperSeries> target_images(const ThickMorphism& phi) {
  const auto slots = phi.momentum_slots();
  const Chart& g = *phi.S.chart();
  std::vector<SuperSeries> out;
  for (std::size_t I = 0; I < slots.size(); ++I) {
    const Variable& v = g[slots[I]];
    out.push_back(partial(phi.S, slots[I]) *
                  (relation_factor(phi.kind, (*phi.target)[I].parity) * sign_of(v.sign)));
  }
  return out;
}

std::vector<SuperSeries> source_momenta(const ThickMorphism& phi) {
  std::vector<SuperSeries> out;
  for (const auto& x : phi.source->variables()) out.push_back(partial(phi.S, x.name));
  return out;
}

ClassicalMap base_map(const ThickMorphism& phi) {
  std::vector<std::string> momenta;
  for (const auto& v : phi.S.chart()->variables())
    if (v.momentum_class()) momenta.push_back(v.name);
  ClassicalMap r{phi.source, phi.target, {}};
  for (const auto& y : target_images(phi))
    r.components.push_back(with_order(set_zero(y, momenta, phi.source), 0));
  return r;
}

SuperSeries relation_residual(const ThickMorphism& phi, const std::vector<SuperSeries>& y_images) {
  const ChartPtr F = with_forms(*phi.S.chart());
  const int N = phi.order;
  const auto slots = phi.momentum_slots();
  const Chart& g = *phi.S.chart();
  auto d = [](const SuperSeries& s) { return de_rham(s, Level::d); };
  SuperSeries pairing(F, N), lhs(F, N);
  for (std::size_t I = 0; I < slots.size(); ++I) {
    const Variable& v = g[slots[I]];
    const SuperSeries P = SuperSeries::variable(F, N, v.name) * sign_of(v.sign);
    const SuperSeries Y = embed(y_images[I], F, N);
    lhs += mul(d(Y), P);
    pairing += mul(Y, P);
  }
  const auto p = source_momenta(phi);
  for (std::size_t a = 0; a < p.size(); ++a) {
    const std::string& x = (*phi.source)[a].name;
    lhs -= mul(SuperSeries::variable(F, N, std::string(kFormPrefix) + x), embed(p[a], F, N));
  }
  return lhs - d(pairing - embed(phi.S, F, N));
}

Report relation_check(const ThickMorphism& phi) {
  Report r;
  r.expect_zero("relation", relation_residual(phi, target_images(phi)));
  return r;
}

namespace {

// Stationary value of S(x; v) + F(Y) - Y^I q_I on W, eliminating Y and q by sweeps
// q = dF/dY(Y), v = sign q, Y = (dS/dv)(v), starting from the base map.
SuperSeries eliminate(const ThickMorphism& phi, const SuperSeries& F, const ChartPtr& W, int order,
                      int sweeps) {
  const auto slots = phi.momentum_slots();
  const Chart& g = *phi.S.chart();
  const auto images = target_images(phi);
  const Chart& tgt = *phi.target;
  const std::size_t n = slots.size();

  Substitution vsub;
  for (std::size_t I = 0; I < n; ++I) vsub.emplace(g[slots[I]].name, SuperSeries(W, order));
  std::vector<SuperSeries> Y, q;
  for (const auto& y : images) Y.push_back(substitute(y, vsub, W, order));
  std::vector<SuperSeries> dF;
  for (std::size_t I = 0; I < n; ++I) dF.push_back(partial(F, tgt[I].name));
  for (int k = 0; k < sweeps; ++k) {
    Substitution ysub;
    for (std::size_t I = 0; I < n; ++I) ysub.insert_or_assign(tgt[I].name, Y[I]);
    q.clear();
    for (std::size_t I = 0; I < n; ++I) q.push_back(substitute(dF[I], ysub, W, order));
    for (std::size_t I = 0; I < n; ++I)
      vsub.insert_or_assign(g[slots[I]].name, q[I] * sign_of(g[slots[I]].sign));
    for (std::size_t I = 0; I < n; ++I) Y[I] = substitute(images[I], vsub, W, order);
  }
  if (q.empty())
    for (std::size_t I = 0; I < n; ++I) q.emplace_back(W, order);
  Substitution ysub;
  for (std::size_t I = 0; I < n; ++I) ysub.insert_or_assign(tgt[I].name, Y[I]);
  SuperSeries r = substitute(phi.S, vsub, W, order) + substitute(F, ysub, W, order);
  for (std::size_t I = 0; I < n; ++I) r -= mul(Y[I], q[I]);
  return r;
}

Variable eps_variable() {
  Variable e = Variable::base(std::string(kEpsName), Parity::even);
  e.role = Role::formal_parameter;
  e.weight = 1;
  return e;
}

// Extra variables of `c` that are neither target coordinates nor eps.
std::vector<Variable> parameters(const Chart& c, const Chart& target) {
  std::vector<Variable> out;
  for (const auto& v : c.variables()) {
    if (v.name == kEpsName || target.contains(v.name)) continue;
    if (v.role != Role::parameter)
      throw Error("pullback: '" + v.name + "' is not a coordinate of '" + target.name() + "'");
    out.push_back(v);
  }
  return out;
}

ChartPtr pullback_chart(const ThickMorphism& phi, const std::vector<Variable>& params) {
  std::vector<Variable> vars{eps_variable()};
  for (const auto& v : phi.source->variables()) vars.push_back(v);
  vars.insert(vars.end(), params.begin(), params.end());
  return Chart::make("eps*" + phi.source->name(), std::move(vars));
}

}  // namespace

SuperSeries pullback(const ThickMorphism& phi, const SuperSeries& g, int eps_order) {
  if (!g.is_zero() && !g.has_parity(parity_of(phi.kind)))
    throw Error(std::string("pullback: parity mismatch: ") + std::string(to_string(phi.kind)) +
                " morphisms pull back " + std::string(to_string(parity_of(phi.kind))) + " functions");
  if (g.chart()->contains(kEpsName)) throw Error("pullback: function already depends on eps");
  const auto params = parameters(*g.chart(), *phi.target);
  std::vector<Variable> fvars{eps_variable()};
  for (const auto& v : g.chart()->variables()) fvars.push_back(v);
  const ChartPtr FC = Chart::make("eps*" + g.chart()->name(), std::move(fvars));
  const SuperSeries F =
      mul(SuperSeries::variable(FC, eps_order, kEpsName), embed(g, FC, eps_order));
  return eliminate(phi, F, pullback_chart(phi, params), eps_order, eps_order);
}

SuperSeries pullback_raw(const ThickMorphism& phi, const SuperSeries& F, int eps_order) {
  const Chart& c = *F.chart();
  const auto e = c.find(kEpsName);
  if (!e) throw Error("pullback_raw: function carries no eps");
  for (const auto& [m, coef] : F.terms()) {
    if (m.e[*e]) continue;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (m.e[i] && phi.target->contains(c[i].name))
        throw Error("pullback_raw: eps-free part depends on '" + c[i].name + "'");
  }
  const auto params = parameters(c, *phi.target);
  return eliminate(phi, with_order(F, eps_order), pullback_chart(phi, params), eps_order, eps_order);
}

ThickMorphism compose(const ThickMorphism& psi, const ThickMorphism& phi, int order) {
  if (!same_chart(psi.source, phi.target))
    throw Error("compose: chart mismatch ('" + psi.source->name() + "' vs '" + phi.target->name() + "')");
  if (psi.kind != phi.kind) throw Error("compose: kind mismatch");
  if (!psi.strict || !phi.strict)
    throw Error("compose: both generating functions must satisfy the zero-momentum normalization");
  const ChartPtr W = phase_chart(*phi.source, momenta_of(*psi.S.chart()),
                                 "S(" + phi.source->name() + "," + psi.target->name() + ")");
  const SuperSeries S = eliminate(phi, with_order(psi.S, order), W, order, order);
  return mk_thick(phi.source, psi.target, phi.kind, S, order, true, phi.source_phase,
                  psi.target_phase);
}

SuperSeries difference(const SuperSeries& a, const SuperSeries& like) {
  return embed(a, like.chart(), like.order()) - like;
}

}  // namespace mfc
