#include "mfc/superalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mfc {

std::string_view to_string(Parity p) { return is_odd(p) ? "odd" : "even"; }

std::string_view to_string(Role r) {
  switch (r) {
    case Role::base: return "base";
    case Role::velocity: return "velocity";
    case Role::odd_velocity: return "odd-velocity";
    case Role::momentum: return "momentum";
    case Role::antimomentum: return "antimomentum";
    case Role::formal_parameter: return "formal-parameter";
    case Role::parameter: return "parameter";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Chart

Chart::Chart(std::string name, std::vector<Variable> vars)
    : name_(std::move(name)), vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.name.empty()) throw Error("chart '" + name_ + "': empty variable name");
    if (!index_.emplace(v.name, i).second)
      throw Error("chart '" + name_ + "': duplicate variable '" + v.name + "'");
    if (v.weight < 0) throw Error("chart '" + name_ + "': negative weight for '" + v.name + "'");
    odd_.push_back(is_odd(v.parity));
    weights_.push_back(v.weight);
    if (!v.form) depth_ = std::max(depth_, v.layer);
  }
}

ChartPtr Chart::coordinates(std::string name,
                            std::initializer_list<std::pair<std::string, Parity>> vars) {
  std::vector<Variable> vs;
  for (const auto& [n, p] : vars) vs.push_back(Variable::base(n, p));
  return make(std::move(name), std::move(vs));
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Chart::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error("unknown variable '" + std::string(name) + "' on chart '" + name_ + "'");
}

std::pair<int, int> Chart::bidimension() const {
  int odd = static_cast<int>(std::count(odd_.begin(), odd_.end(), true));
  return {static_cast<int>(vars_.size()) - odd, odd};
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && a->same_layout(*b));
}

std::size_t Monomial::degree() const {
  return std::accumulate(e.begin(), e.end(), std::size_t{0});
}

// ---------------------------------------------------------------------------
// SuperSeries

SuperSeries::SuperSeries(ChartPtr chart, int order) : chart_(std::move(chart)), order_(order) {
  if (!chart_) throw Error("series without a chart");
  if (order_ < 0) throw Error("negative filtration order");
}

SuperSeries SuperSeries::constant(ChartPtr chart, int order, const Rational& c) {
  SuperSeries s(std::move(chart), order);
  s.add_term(Monomial(s.chart_->size()), c);
  return s;
}

SuperSeries SuperSeries::variable(ChartPtr chart, int order, std::string_view name) {
  SuperSeries s(std::move(chart), order);
  Monomial m(s.chart_->size());
  m.e[s.chart_->index_of(name)] = 1;
  s.add_term(m, 1);
  return s;
}

int SuperSeries::weight(const Monomial& m) const {
  int w = 0;
  const auto& ws = chart_->weights();
  for (std::size_t i = 0; i < m.e.size(); ++i) w += ws[i] * m.e[i];
  return w;
}

namespace {

Parity monomial_parity(const Chart& c, const Monomial& m) {
  int p = 0;
  const auto& odd = c.odd_mask();
  for (std::size_t i = 0; i < m.e.size(); ++i)
    if (odd[i]) p ^= (m.e[i] & 1);
  return static_cast<Parity>(p);
}

bool within_caps(const Chart& c, const Monomial& m) {
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    int cap = c[i].cap();
    if (cap > 0 && m.e[i] > cap) return false;
  }
  return true;
}

}  // namespace

std::optional<Parity> SuperSeries::parity() const {
  std::optional<Parity> p;
  for (const auto& [m, c] : terms_) {
    auto q = monomial_parity(*chart_, m);
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p;
}

bool SuperSeries::has_parity(Parity p) const {
  for (const auto& [m, c] : terms_)
    if (monomial_parity(*chart_, m) != p) return false;
  return true;
}

SuperSeries SuperSeries::part(Parity p) const {
  SuperSeries r(chart_, order_);
  for (const auto& [m, c] : terms_)
    if (monomial_parity(*chart_, m) == p) r.terms_.emplace(m, c);
  return r;
}

Rational SuperSeries::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational SuperSeries::constant_term() const { return coefficient(Monomial(chart_->size())); }

void SuperSeries::add_term(const Monomial& m, const Rational& c) {
  if (m.e.size() != chart_->size()) throw Error("monomial does not match chart");
  if (c == 0 || weight(m) > order_ || !within_caps(*chart_, m)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void SuperSeries::require_compatible(const SuperSeries& o, const char* op) const {
  if (!same_chart(chart_, o.chart_))
    throw Error(std::string(op) + ": chart mismatch ('" + chart_->name() + "' vs '" +
                o.chart_->name() + "')");
  if (order_ != o.order_)
    throw Error(std::string(op) + ": filtration mismatch (" + std::to_string(order_) + " vs " +
                std::to_string(o.order_) + ")");
}

SuperSeries& SuperSeries::operator+=(const SuperSeries& o) {
  require_compatible(o, "add");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SuperSeries& SuperSeries::operator-=(const SuperSeries& o) {
  require_compatible(o, "sub");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SuperSeries& SuperSeries::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

SuperSeries SuperSeries::operator-() const {
  SuperSeries r = *this;
  return r *= -1;
}

bool operator==(const SuperSeries& a, const SuperSeries& b) {
  return same_chart(a.chart_, b.chart_) && a.order_ == b.order_ && a.terms_ == b.terms_;
}

// ---------------------------------------------------------------------------
// Products and derivatives

namespace {

// Number of transpositions of odd factors needed to bring a*b into chart order.
int product_sign(const std::vector<bool>& odd, const Monomial& a, const Monomial& b) {
  int swaps = 0;
  int odd_after = 0;  // odd factors of `a` with index > j, scanning j downward
  for (std::size_t k = a.e.size(); k-- > 0;) {
    if (!odd[k]) continue;
    if (b.e[k]) swaps += odd_after;
    if (a.e[k]) ++odd_after;
  }
  return (swaps & 1) ? -1 : 1;
}

}  // namespace

SuperSeries mul(const SuperSeries& a, const SuperSeries& b) {
  if (!same_chart(a.chart(), b.chart()))
    throw Error("mul: chart mismatch ('" + a.chart()->name() + "' vs '" + b.chart()->name() + "')");
  if (a.order() != b.order())
    throw Error("mul: filtration mismatch (" + std::to_string(a.order()) + " vs " +
                std::to_string(b.order()) + ")");
  const Chart& c = *a.chart();
  const auto& odd = c.odd_mask();
  const std::size_t n = c.size();
  SuperSeries r(a.chart(), a.order());
  if (a.is_zero() || b.is_zero()) return r;

  std::vector<int> wb;
  wb.reserve(b.size());
  for (const auto& [m, v] : b.terms()) wb.push_back(b.weight(m));

  Monomial prod(n);
  for (const auto& [ma, ca] : a.terms()) {
    const int wa = a.weight(ma);
    std::size_t jb = 0;
    for (const auto& [mb, cb] : b.terms()) {
      const int w = wa + wb[jb++];
      if (w > a.order()) continue;
      bool vanishes = false;
      for (std::size_t k = 0; k < n; ++k) {
        unsigned e = unsigned(ma.e[k]) + mb.e[k];
        int cap = c[k].cap();
        if ((cap > 0 && e > unsigned(cap)) || e > 255) {
          vanishes = true;
          break;
        }
        prod.e[k] = static_cast<std::uint8_t>(e);
      }
      if (vanishes) continue;
      Rational coef = ca * cb;
      if (product_sign(odd, ma, mb) < 0) coef = -coef;
      r.add_term(prod, coef);
    }
  }
  return r;
}

SuperSeries power(const SuperSeries& a, int k) {
  if (k < 0) throw Error("power: negative exponent");
  SuperSeries r = SuperSeries::constant(a.chart(), a.order(), 1);
  SuperSeries base = a;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return r;
}

SuperSeries partial(const SuperSeries& a, std::size_t var) {
  const Chart& c = *a.chart();
  if (var >= c.size()) throw Error("partial: unknown variable index");
  const auto& odd = c.odd_mask();
  SuperSeries r(a.chart(), a.order());
  for (const auto& [m, coef] : a.terms()) {
    if (m.e[var] == 0) continue;
    Monomial d = m;
    d.e[var] -= 1;
    Rational v = coef;
    if (odd[var]) {
      int before = 0;
      for (std::size_t k = 0; k < var; ++k)
        if (odd[k] && m.e[k]) ++before;
      if (before & 1) v = -v;
    } else {
      v *= m.e[var];
    }
    r.add_term(d, v);
  }
  return r;
}

SuperSeries partial(const SuperSeries& a, std::string_view var) {
  return partial(a, a.chart()->index_of(var));
}

SuperSeries truncate(const SuperSeries& a, int n) {
  if (n > a.order())
    throw Error("truncate: order " + std::to_string(n) + " exceeds filtration order " +
                std::to_string(a.order()));
  return with_order(a, n);
}

SuperSeries with_order(const SuperSeries& a, int n) {
  SuperSeries r(a.chart(), n);
  for (const auto& [m, c] : a.terms()) r.add_term(m, c);
  return r;
}

// ---------------------------------------------------------------------------
// Substitution

SuperSeries substitute(const SuperSeries& a, const Substitution& sigma, ChartPtr out, int order) {
  const Chart& src = *a.chart();
  const std::size_t n = src.size();

  std::vector<SuperSeries> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Variable& v = src[i];
    auto it = sigma.find(v.name);
    if (it != sigma.end()) {
      SuperSeries img = embed(it->second, out, order);
      if (!img.has_parity(v.parity))
        throw Error("substitute: image of " + std::string(to_string(v.parity)) + " variable '" +
                    v.name + "' has a component of the wrong parity");
      images.push_back(std::move(img));
    } else {
      auto j = out->find(v.name);
      if (!j) {
        // Unused variables need no image.
        images.push_back(SuperSeries(out, order));
        continue;
      }
      if ((*out)[*j].parity != v.parity)
        throw Error("substitute: parity mismatch for '" + v.name + "'");
      images.push_back(SuperSeries::variable(out, order, v.name));
    }
  }

  // Variables used by `a` but lacking an image on `out` are an error.
  for (const auto& [m, c] : a.terms())
    for (std::size_t i = 0; i < n; ++i)
      if (m.e[i] && !sigma.count(src[i].name) && !out->contains(src[i].name))
        throw Error("substitute: no image for '" + src[i].name + "' on chart '" + out->name() +
                    "'");

  // Cache powers image[i]^k.
  std::vector<std::vector<SuperSeries>> powers(n);
  auto pw = [&](std::size_t i, int k) -> const SuperSeries& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(SuperSeries::constant(out, order, 1));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(mul(cache.back(), images[i]));
    return cache[k];
  };

  SuperSeries r(out, order);
  for (const auto& [m, c] : a.terms()) {
    SuperSeries t = SuperSeries::constant(out, order, c);
    for (std::size_t i = 0; i < n && !t.is_zero(); ++i)
      if (m.e[i]) t = mul(t, pw(i, m.e[i]));
    r += t;
  }
  return r;
}

SuperSeries embed(const SuperSeries& a, ChartPtr out, int order) {
  if (same_chart(a.chart(), out)) {
    if (a.order() == order) return a;
    SuperSeries r(out, order);
    for (const auto& [m, c] : a.terms()) r.add_term(m, c);
    return r;
  }
  const Chart& src = *a.chart();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    map[i] = out->find(src[i].name);
    if (map[i] && (*out)[*map[i]].parity != src[i].parity)
      throw Error("embed: parity mismatch for '" + src[i].name + "'");
  }
  // Reordering odd variables requires signs; fall back to a product when order changes.
  bool monotone = true;
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!map[i] || !src.odd_mask()[i]) continue;
    if (last && *map[i] < *last) monotone = false;
    last = map[i];
  }
  SuperSeries r(out, order);
  for (const auto& [m, c] : a.terms()) {
    Monomial t(out->size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (!m.e[i]) continue;
      if (!map[i])
        throw Error("embed: variable '" + src[i].name + "' missing on chart '" + out->name() + "'");
      t.e[*map[i]] = m.e[i];
    }
    if (monotone) {
      r.add_term(t, c);
    } else {
      SuperSeries prod = SuperSeries::constant(out, order, c);
      for (std::size_t i = 0; i < src.size(); ++i)
        if (m.e[i]) prod = mul(prod, power(SuperSeries::variable(out, order, src[i].name), m.e[i]));
      r += prod;
    }
  }
  return r;
}

SuperSeries embed(const SuperSeries& a, ChartPtr out) { return embed(a, std::move(out), a.order()); }

SuperSeries apply_derivation(const SuperSeries& a, const Substitution& images) {
  SuperSeries r(a.chart(), a.order());
  for (const auto& [name, img] : images) {
    auto i = a.chart()->find(name);
    if (!i) throw Error("derivation: unknown variable '" + name + "'");
    SuperSeries d = partial(a, *i);
    if (d.is_zero()) continue;
    r += mul(embed(img, a.chart(), a.order()), d);
  }
  return r;
}

SuperSeries set_zero(const SuperSeries& a, std::span<const std::string> vars, ChartPtr out) {
  Substitution zero;
  for (const auto& v : vars) zero.emplace(v, SuperSeries(out, a.order()));
  return substitute(a, zero, out, a.order());
}

std::size_t base_degree(const Chart& c, const Monomial& m) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    const Variable& v = c[i];
    if (v.form || v.weight != 0 || v.role == Role::parameter || v.role == Role::formal_parameter)
      continue;
    d += m.e[i];
  }
  return d;
}

SuperSeries truncate_base_degree(const SuperSeries& a, std::size_t n) {
  SuperSeries r(a.chart(), a.order());
  for (const auto& [m, c] : a.terms())
    if (base_degree(*a.chart(), m) <= n) r.add_term(m, c);
  return r;
}

SuperSeries shift_degree(const SuperSeries& a, std::string_view var, int shift) {
  const std::size_t i = a.chart()->index_of(var);
  if (a.chart()->odd_mask()[i]) throw Error("shift_degree: variable must be even");
  SuperSeries r(a.chart(), a.order());
  for (const auto& [m, c] : a.terms()) {
    int e = int(m.e[i]) + shift;
    if (e < 0) continue;
    Monomial t = m;
    t.e[i] = static_cast<std::uint8_t>(e);
    r.add_term(t, c);
  }
  return r;
}

}  // namespace mfc
