#include "mfc/testkit.hpp"

#include <algorithm>

namespace mfc {

Generator::Generator(std::uint64_t seed, GeneratorConfig config) : rng_(seed), config_(config) {}

int Generator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool Generator::coin() { return uniform(0, 1) == 1; }

Rational Generator::coefficient() {
  int num = uniform(1, 3) * (coin() ? 1 : -1);
  Rational r(num, uniform(1, 3));
  r.canonicalize();
  return r;
}

ChartPtr Generator::chart(const std::string& name, const std::string& even, const std::string& odd) {
  int e = uniform(0, config_.max_even);
  int o = uniform(0, config_.max_odd);
  if (e == 0) e = 1;
  return chart(name, even, odd, e, o);
}

ChartPtr Generator::chart(const std::string& name, const std::string& even, const std::string& odd,
                          int n_even, int n_odd) {
  std::vector<Variable> vars;
  for (int i = 1; i <= n_even; ++i) vars.push_back(Variable::base(even + std::to_string(i), Parity::even));
  for (int i = 1; i <= n_odd; ++i) vars.push_back(Variable::base(odd + std::to_string(i), Parity::odd));
  return Chart::make(name, std::move(vars));
}

namespace {

// Every monomial accepted by `keep`, with per-variable caps and a total degree bound.
template <class Keep>
std::vector<Monomial> monomials(const Chart& c, int max_degree, Keep keep) {
  std::vector<Monomial> out;
  Monomial m(c.size());
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == c.size()) {
      if (keep(m)) out.push_back(m);
      return;
    }
    int cap = c[i].cap() ? c[i].cap() : left;
    for (int k = 0; k <= std::min(cap, left); ++k) {
      m.e[i] = static_cast<std::uint8_t>(k);
      self(self, i + 1, left - k);
    }
    m.e[i] = 0;
  };
  rec(rec, 0, max_degree);
  return out;
}

Parity parity_of(const Chart& c, const Monomial& m) {
  Parity p = Parity::even;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (m.e[i] % 2 && is_odd(c[i].parity)) p = flip(p);
  return p;
}

int momentum_degree(const Chart& c, const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].momentum_class()) d += m.e[i];
  return d;
}

}  // namespace

SuperSeries Generator::series(const ChartPtr& c, int order, Parity p) {
  return series(c, order, p, config_.max_degree, config_.max_terms);
}

SuperSeries Generator::series(const ChartPtr& c, int order, Parity p, int max_degree, int max_terms) {
  SuperSeries s(c, order);
  auto pool = monomials(*c, max_degree, [&](const Monomial& m) {
    int w = 0;
    for (std::size_t i = 0; i < c->size(); ++i) w += (*c)[i].weight * m.e[i];
    return w <= order && parity_of(*c, m) == p;
  });
  if (pool.empty()) return s;
  std::shuffle(pool.begin(), pool.end(), rng_);
  const int n = uniform(1, std::max(1, std::min<int>(max_terms, static_cast<int>(pool.size()))));
  for (int i = 0; i < n; ++i) s.add_term(pool[i], coefficient());
  return s;
}

ClassicalMap Generator::classical_map(const ChartPtr& source, const ChartPtr& target) {
  ClassicalMap phi{source, target, {}};
  for (const auto& y : target->variables())
    phi.components.push_back(series(source, 0, y.parity, config_.max_degree, 3));
  return phi;
}

ThickMorphism Generator::morphism(const ChartPtr& source, const ChartPtr& target, Kind kind,
                                  int order) {
  const ChartPtr G = generating_chart(source, target, kind);
  const int top = std::min(order, config_.max_momentum);
  auto pool = monomials(*G, config_.max_degree + top, [&](const Monomial& m) {
    const int k = momentum_degree(*G, m);
    const int b = static_cast<int>(m.degree()) - k;
    return k >= 1 && k <= top && b <= config_.max_degree - 1 && parity_of(*G, m) == parity_of(kind);
  });
  SuperSeries S(G, order);
  std::shuffle(pool.begin(), pool.end(), rng_);
  const int n = std::min<int>(static_cast<int>(pool.size()), uniform(2, config_.max_terms + 2));
  for (int i = 0; i < n; ++i) S.add_term(pool[i], coefficient());
  if (kind == Kind::even && coin()) S += SuperSeries::constant(G, order, coefficient());
  return mk_thick(source, target, kind, S, order, true);
}

Substitution Generator::coordinate_change(const ChartPtr& c) {
  Substitution change;
  std::vector<std::size_t> even, odd;
  for (std::size_t i = 0; i < c->size(); ++i) ((*c)[i].parity == Parity::odd ? odd : even).push_back(i);
  // Lower-triangular linear part with nonzero diagonal on each parity block.
  auto linear = [&](const std::vector<std::size_t>& block, std::size_t k) {
    SuperSeries s(c, 0);
    Monomial m(c->size());
    for (std::size_t j = 0; j <= k; ++j) {
      m.e[block[j]] = 1;
      if (j == k)
        s.add_term(m, coefficient());
      else if (coin())
        s.add_term(m, coefficient());
      m.e[block[j]] = 0;
    }
    return s;
  };
  auto quadratic = [&](Parity p) {
    SuperSeries r(c, 0);
    const SuperSeries q = series(c, 0, p, 2, 2);
    for (const auto& [m, coef] : q.terms())
      if (m.degree() == 2) r.add_term(m, coef);
    return r;
  };
  for (std::size_t k = 0; k < even.size(); ++k)
    change.emplace((*c)[even[k]].name, linear(even, k) + quadratic(Parity::even));
  for (std::size_t k = 0; k < odd.size(); ++k)
    change.emplace((*c)[odd[k]].name, linear(odd, k) + quadratic(Parity::odd));
  return change;
}

SuperSeries oracle_pullback_classical(const ClassicalMap& phi, const SuperSeries& g) {
  const Chart& t = *g.chart();
  const int order = g.order();
  std::vector<SuperSeries> comps;
  for (const auto& v : t.variables()) {
    auto i = phi.target->find(v.name);
    if (!i) throw Error("oracle: '" + v.name + "' is not a target coordinate");
    comps.push_back(embed(phi.components[*i], phi.source, order));
  }
  SuperSeries r(phi.source, order);
  for (const auto& [m, c] : g.terms()) {
    SuperSeries term = SuperSeries::constant(phi.source, order, c);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (int k = 0; k < m.e[i]; ++k) term = mul(term, comps[i]);
    r += term;
  }
  return r;
}

SuperSeries oracle_pullback_naive(const ThickMorphism& phi, const SuperSeries& g, int eps_order) {
  const int M = 2 * eps_order;
  Variable eps = Variable::base("eps", Parity::even);
  eps.role = Role::formal_parameter;
  eps.weight = 1;

  std::vector<Variable> fvars{eps}, wvars{eps};
  for (const auto& v : g.chart()->variables()) fvars.push_back(v);
  for (const auto& v : phi.source->variables()) wvars.push_back(v);
  for (const auto& v : g.chart()->variables())
    if (!phi.target->contains(v.name)) wvars.push_back(v);
  const ChartPtr FC = Chart::make("F", std::move(fvars));
  const ChartPtr W = Chart::make("W", std::move(wvars));
  const SuperSeries F = mul(SuperSeries::variable(FC, M, "eps"), embed(g, FC, M));

  const Chart& G = *phi.S.chart();
  const Chart& tgt = *phi.target;
  const std::size_t n = tgt.size();
  std::vector<std::string> mom(n);
  std::vector<Rational> msign(n);
  std::vector<SuperSeries> dS, dF;
  for (std::size_t I = 0; I < n; ++I) {
    for (std::size_t j = 0; j < G.size(); ++j)
      if (G[j].momentum_class() && G[j].conjugate == tgt[I].name) {
        mom[I] = G[j].name;
        msign[I] = G[j].sign;
      }
    const bool flip_sign = phi.kind == Kind::even && is_odd(tgt[I].parity);
    dS.push_back(partial(phi.S, mom[I]) * (msign[I] * (flip_sign ? -1 : 1)));
    dF.push_back(partial(F, tgt[I].name));
  }

  auto momenta_at = [&](const std::vector<SuperSeries>& q) {
    Substitution s;
    for (std::size_t I = 0; I < n; ++I) s.emplace(mom[I], q[I] * msign[I]);
    return s;
  };
  auto coords_at = [&](const std::vector<SuperSeries>& y) {
    Substitution s;
    for (std::size_t I = 0; I < n; ++I) s.emplace(tgt[I].name, y[I]);
    return s;
  };

  std::vector<SuperSeries> q(n, SuperSeries(W, M)), Y;
  for (std::size_t I = 0; I < n; ++I) Y.push_back(substitute(dS[I], momenta_at(q), W, M));
  for (int sweep = 0; sweep < 2 * eps_order; ++sweep) {
    const Substitution sm = momenta_at(q), sy = coords_at(Y);
    std::vector<SuperSeries> Y2, q2;
    for (std::size_t I = 0; I < n; ++I) {
      Y2.push_back(substitute(dS[I], sm, W, M));
      q2.push_back(substitute(dF[I], sy, W, M));
    }
    Y = std::move(Y2);
    q = std::move(q2);
  }
  SuperSeries value = substitute(phi.S, momenta_at(q), W, M) + substitute(F, coords_at(Y), W, M);
  for (std::size_t I = 0; I < n; ++I) value -= mul(Y[I], q[I]);
  return with_order(value, eps_order);
}

}  // namespace mfc
