#include "mfc/superforms.hpp"

#include <algorithm>

namespace mfc {

std::string_view to_string(BundleKind k) {
  switch (k) {
    case BundleKind::T: return "T";
    case BundleKind::PiT: return "PiT";
    case BundleKind::Tstar: return "T*";
    case BundleKind::PiTstar: return "PiT*";
  }
  return "?";
}

std::string_view to_string(IdentificationCase c) {
  switch (c) {
    case IdentificationCase::MX: return "MX";
    case IdentificationCase::oddMX: return "oddMX";
    case IdentificationCase::Tulczyjew: return "Tulczyjew";
    case IdentificationCase::oddTulczyjew: return "oddTulczyjew";
    case IdentificationCase::antiTulczyjew: return "antiTulczyjew";
    case IdentificationCase::oddAntiTulczyjew: return "oddAntiTulczyjew";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Charts

ChartPtr extend_chart(const Chart& c, BundleKind k) {
  for (const auto& v : c.variables())
    if (v.form) throw Error("extend_chart: cannot extend a form chart");
  const int layer = c.depth() + 1;
  if (layer > kMaxBundleDepth)
    throw Error("extend_chart: bundle depth " + std::to_string(layer) + " exceeds " +
                std::to_string(kMaxBundleDepth));
  std::vector<Variable> vars(c.variables().begin(), c.variables().end());
  for (const auto& v : c.variables()) {
    Variable d;
    d.origin = v.name;
    d.layer = layer;
    d.weight = v.weight;
    switch (k) {
      case BundleKind::T:
        d.name = std::string(kDotPrefix) + v.name;
        d.parity = v.parity;
        d.role = Role::velocity;
        break;
      case BundleKind::PiT:
        d.name = std::string(kParPrefix) + v.name;
        d.parity = flip(v.parity);
        d.role = Role::odd_velocity;
        break;
      case BundleKind::Tstar:
        d.name = std::string(kMomentumPrefix) + v.name;
        d.parity = v.parity;
        d.role = Role::momentum;
        d.weight = 1;
        d.conjugate = v.name;
        break;
      case BundleKind::PiTstar:
        d.name = std::string(kAntimomentumPrefix) + v.name;
        d.parity = flip(v.parity);
        d.role = Role::antimomentum;
        d.weight = 1;
        d.conjugate = v.name;
        break;
    }
    vars.push_back(std::move(d));
  }
  return Chart::make(std::string(to_string(k)) + "(" + c.name() + ")", std::move(vars));
}

ChartPtr extend_chart(const ChartPtr& c, std::initializer_list<BundleKind> ks) {
  ChartPtr r = c;
  for (auto k : ks) r = extend_chart(*r, k);
  return r;
}

ChartPtr with_forms(const Chart& c) {
  std::vector<Variable> vars(c.variables().begin(), c.variables().end());
  for (const auto& v : c.variables()) {
    if (v.form) return Chart::make(c.name(), std::move(vars));
  }
  for (const auto& v : c.variables()) {
    Variable d;
    d.name = std::string(kFormPrefix) + v.name;
    d.parity = flip(v.parity);
    d.role = Role::odd_velocity;
    d.weight = v.weight;
    d.origin = v.name;
    d.form = true;
    d.layer = c.depth() + 1;
    vars.push_back(std::move(d));
  }
  return Chart::make("Omega(" + c.name() + ")", std::move(vars));
}

SuperSeries as_form(const SuperSeries& s) { return embed(s, with_forms(*s.chart())); }

// ---------------------------------------------------------------------------
// Exterior operators

namespace {

// Name of the partner of `v` produced by an extension with `prefix`, if present.
std::optional<std::size_t> partner(const Chart& c, const Variable& v, std::string_view prefix,
                                   bool form) {
  auto i = c.find(std::string(prefix) + v.name);
  if (!i) return std::nullopt;
  const Variable& p = c[*i];
  if (p.origin != v.name || p.form != form) return std::nullopt;
  return i;
}

Substitution d_images(const ChartPtr& c, int order) {
  Substitution img;
  for (const auto& v : c->variables()) {
    if (v.form) continue;
    if (auto d = partner(*c, v, kFormPrefix, true))
      img.emplace(v.name, SuperSeries::variable(c, order, (*c)[*d].name));
  }
  return img;
}

Substitution dot_images(const ChartPtr& c, int order) {
  Substitution img;
  for (const auto& v : c->variables()) {
    if (v.form) continue;
    if (auto t = partner(*c, v, kDotPrefix, false)) {
      const Variable& dv = (*c)[*t];
      img.emplace(v.name, SuperSeries::variable(c, order, dv.name));
      // d(v) -> d(dot v)
      auto dx = partner(*c, v, kFormPrefix, true);
      auto ddv = partner(*c, dv, kFormPrefix, true);
      if (dx && ddv) img.emplace((*c)[*dx].name, SuperSeries::variable(c, order, (*c)[*ddv].name));
    }
  }
  return img;
}

}  // namespace

Substitution partial_images(const ChartPtr& c, int order) {
  Substitution img;
  for (const auto& v : c->variables()) {
    if (v.form) continue;
    if (auto p = partner(*c, v, kParPrefix, false)) {
      const Variable& pv = (*c)[*p];
      img.emplace(v.name, SuperSeries::variable(c, order, pv.name));
      // partial(d v) = -d(partial v)
      auto dx = partner(*c, v, kFormPrefix, true);
      auto dpv = partner(*c, pv, kFormPrefix, true);
      if (dx && dpv) img.emplace((*c)[*dx].name, -SuperSeries::variable(c, order, (*c)[*dpv].name));
    }
  }
  return img;
}

SuperSeries de_rham(const SuperSeries& w, Level level) {
  const ChartPtr& c = w.chart();
  Substitution img = level == Level::d ? d_images(c, w.order()) : partial_images(c, w.order());
  if (img.empty())
    throw Error(std::string("de_rham: chart '") + c->name() + "' has no " +
                (level == Level::d ? "form level" : "antitangent level"));
  return apply_derivation(w, img);
}

SuperSeries time_derivative(const SuperSeries& w) {
  Substitution img = dot_images(w.chart(), w.order());
  if (img.empty()) throw Error("time_derivative: chart '" + w.chart()->name() + "' has no tangent level");
  return apply_derivation(w, img);
}

// ---------------------------------------------------------------------------
// Liouville forms

SuperSeries liouville(const ChartPtr& c, Liouville which, int order) {
  const ChartPtr f = with_forms(*c);
  SuperSeries r(f, order);
  auto var = [&](const std::string& n) { return SuperSeries::variable(f, order, n); };
  auto dvar = [&](const std::string& n) { return var(std::string(kFormPrefix) + n); };
  const bool want_anti = which == Liouville::lambda_E || which == Liouville::lambda_PiEstar ||
                         which == Liouville::lambda_TM || which == Liouville::theta_PiTM;
  const Role role = want_anti ? Role::antimomentum : Role::momentum;
  int found = 0;
  for (const auto& m : c->variables()) {
    if (m.role != role || m.conjugate.empty() || m.form) continue;
    const Variable& z = (*c)[c->index_of(m.conjugate)];
    switch (which) {
      case Liouville::theta_E:
      case Liouville::theta_Estar:
      case Liouville::lambda_E:
      case Liouville::lambda_PiEstar:
        r += dvar(z.name) * var(m.name);
        ++found;
        break;
      case Liouville::theta_TM:
      case Liouville::lambda_TM: {
        const auto dz = std::string(kDotPrefix) + z.name;
        const auto dm = std::string(kDotPrefix) + m.name;
        if (!c->contains(dz) || !c->contains(dm)) continue;
        r += dvar(z.name) * var(dm) + dvar(dz) * var(m.name);
        ++found;
        break;
      }
      case Liouville::theta_PiTM:
      case Liouville::lambda_PiTM: {
        const auto pz = std::string(kParPrefix) + z.name;
        const auto pm = std::string(kParPrefix) + m.name;
        if (!c->contains(pz) || !c->contains(pm)) continue;
        const Rational s = is_odd(z.parity) ? -1 : 1;
        r += s * (dvar(z.name) * var(pm)) + dvar(pz) * var(m.name);
        ++found;
        break;
      }
    }
  }
  if (!found) throw Error("liouville: chart '" + c->name() + "' lacks the required bundle structure");
  return r;
}

// ---------------------------------------------------------------------------
// Brackets

namespace {

struct Pair {
  std::size_t z;
  std::size_t m;
  int sign;
  Parity pz;
};

std::vector<Pair> darboux_pairs(const Chart& c, Structure s) {
  std::vector<Pair> out;
  const Role role = s == Structure::even ? Role::momentum : Role::antimomentum;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Variable& m = c[i];
    if (m.role != role || m.conjugate.empty() || m.form) continue;
    const std::size_t z = c.index_of(m.conjugate);
    out.push_back({z, i, m.sign, c[z].parity});
  }
  return out;
}

SuperSeries bracket_homogeneous(const SuperSeries& f, Parity pf, const SuperSeries& g,
                                const std::vector<Pair>& pairs, Structure s) {
  SuperSeries r(f.chart(), f.order());
  for (const auto& p : pairs) {
    const SuperSeries fz = partial(f, p.z);
    const SuperSeries fp = partial(f, p.m) * Rational(p.sign);
    const SuperSeries gz = partial(g, p.z);
    const SuperSeries gp = partial(g, p.m) * Rational(p.sign);
    const int k1 = koszul(p.pz, flip(pf));
    const int k2 = s == Structure::even ? koszul(p.pz, pf) : koszul(flip(p.pz), flip(pf));
    r += Rational(k1) * mul(fz, gp);
    r -= Rational(k2) * mul(fp, gz);
  }
  return r;
}

}  // namespace

SuperSeries poisson_bracket(const SuperSeries& a, const SuperSeries& b, Structure s) {
  if (!same_chart(a.chart(), b.chart())) throw Error("poisson_bracket: chart mismatch");
  const auto pairs = darboux_pairs(*a.chart(), s);
  if (pairs.empty())
    throw Error(std::string("poisson_bracket: chart '") + a.chart()->name() + "' has no " +
                (s == Structure::even ? "momenta" : "antimomenta"));
  SuperSeries r(a.chart(), a.order());
  for (Parity p : {Parity::even, Parity::odd}) {
    SuperSeries f = a.part(p);
    if (!f.is_zero()) r += bracket_homogeneous(f, p, b, pairs, s);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Identifications

SuperSeries substitute_form(const SuperSeries& w, const Substitution& sigma, const ChartPtr& out) {
  const ChartPtr f = with_forms(*out);
  Substitution full;
  for (const auto& v : w.chart()->variables()) {
    if (v.form) continue;
    SuperSeries img(f, w.order());
    if (auto it = sigma.find(v.name); it != sigma.end())
      img = embed(it->second, f, w.order());
    else if (f->contains(v.name))
      img = SuperSeries::variable(f, w.order(), v.name);
    else
      continue;
    if (auto dv = w.chart()->find(std::string(kFormPrefix) + v.name);
        dv && (*w.chart())[*dv].form)
      full.emplace((*w.chart())[*dv].name, de_rham(img, Level::d));
    full.emplace(v.name, std::move(img));
  }
  return substitute(w, full, f, w.order());
}

namespace {

constexpr int kFormOrder = 2;

// Base chart plus a fiber with one coordinate per base coordinate.
ChartPtr with_fiber(const ChartPtr& base, std::string_view prefix, bool flip_parity,
                    std::string name) {
  std::vector<Variable> vars(base->variables().begin(), base->variables().end());
  for (const auto& v : base->variables())
    vars.push_back(Variable::base(std::string(prefix) + v.name,
                                  flip_parity ? flip(v.parity) : v.parity));
  return Chart::make(std::move(name), std::move(vars));
}

SuperSeries var(const ChartPtr& c, const std::string& n) {
  return SuperSeries::variable(c, kFormOrder, n);
}

}  // namespace

Identification make_identification(IdentificationCase which, const ChartPtr& base) {
  const auto [ev, od] = base->bidimension();
  if (ev + od < 1) throw Error("identification: empty base chart");
  Identification id{which, nullptr, nullptr, {}};
  auto sgn = [](Parity p) { return Rational(is_odd(p) ? -1 : 1); };
  const std::string M = base->name();
  switch (which) {
    case IdentificationCase::MX: {
      auto E = with_fiber(base, "u_", false, "E");
      auto Estar = with_fiber(base, "w_", false, "E*");
      id.left = extend_chart(*E, BundleKind::Tstar);
      id.right = extend_chart(*Estar, BundleKind::Tstar);
      for (const auto& v : base->variables()) {
        // u_i = p_i ; p^i = -(-1)^i u^i
        id.table.emplace("w_" + v.name, var(id.left, "q_u_" + v.name));
        id.table.emplace("q_w_" + v.name, -sgn(v.parity) * var(id.left, "u_" + v.name));
      }
      break;
    }
    case IdentificationCase::oddMX: {
      auto E = with_fiber(base, "u_", false, "E");
      auto PiEstar = with_fiber(base, "xi_", true, "PiE*");
      id.left = extend_chart(*E, BundleKind::PiTstar);
      id.right = extend_chart(*PiEstar, BundleKind::PiTstar);
      for (const auto& v : base->variables()) {
        // xi_i = u*_i ; xi*^i = -u^i
        id.table.emplace("xi_" + v.name, var(id.left, "ys_u_" + v.name));
        id.table.emplace("ys_xi_" + v.name, -var(id.left, "u_" + v.name));
      }
      break;
    }
    case IdentificationCase::Tulczyjew:
    case IdentificationCase::oddTulczyjew: {
      const bool odd = which == IdentificationCase::oddTulczyjew;
      const auto cot = odd ? BundleKind::PiTstar : BundleKind::Tstar;
      const std::string_view pre = odd ? kAntimomentumPrefix : kMomentumPrefix;
      id.left = extend_chart(base, {cot, BundleKind::T});
      id.right = extend_chart(base, {BundleKind::T, cot});
      for (const auto& v : base->variables()) {
        const std::string m = std::string(pre) + v.name;
        // momentum conjugate to x is dot p ; conjugate to dot x is p
        id.table.emplace(m, var(id.left, std::string(kDotPrefix) + m));
        id.table.emplace(std::string(pre) + std::string(kDotPrefix) + v.name, var(id.left, m));
      }
      break;
    }
    case IdentificationCase::antiTulczyjew:
    case IdentificationCase::oddAntiTulczyjew: {
      const bool odd = which == IdentificationCase::oddAntiTulczyjew;
      // antiTulczyjew: PiT(PiT*M) = T*(PiTM); oddAntiTulczyjew: PiT(T*M) = PiT*(PiTM)
      const auto cot_left = odd ? BundleKind::Tstar : BundleKind::PiTstar;
      const auto cot_right = odd ? BundleKind::PiTstar : BundleKind::Tstar;
      const std::string_view pre_left = odd ? kMomentumPrefix : kAntimomentumPrefix;
      const std::string_view pre_right = odd ? kAntimomentumPrefix : kMomentumPrefix;
      id.left = extend_chart(base, {cot_left, BundleKind::PiT});
      id.right = extend_chart(base, {BundleKind::PiT, cot_right});
      for (const auto& v : base->variables()) {
        const std::string m = std::string(pre_left) + v.name;
        // conjugate to x: (-1)^a par m ; conjugate to par x: m
        id.table.emplace(std::string(pre_right) + v.name,
                         sgn(v.parity) * var(id.left, std::string(kParPrefix) + m));
        id.table.emplace(std::string(pre_right) + std::string(kParPrefix) + v.name,
                         var(id.left, m));
      }
      break;
    }
  }
  (void)M;
  return id;
}

namespace {

// Sum over pairs (coordinate z, conjugate m) of  d z * m  on the form chart `f`.
SuperSeries pairing_d(const ChartPtr& f, const std::vector<std::pair<std::string, std::string>>& zm,
                      bool differential_on_z) {
  SuperSeries r(f, kFormOrder);
  for (const auto& [z, m] : zm) {
    if (differential_on_z)
      r += var(f, std::string(kFormPrefix) + z) * var(f, m);
    else
      r += var(f, z) * var(f, m);
  }
  return r;
}

}  // namespace

Report verify_identification(IdentificationCase which, const ChartPtr& base) {
  const Identification id = make_identification(which, base);
  const ChartPtr F = with_forms(*id.left);
  Report rep;
  auto d = [](const SuperSeries& s) { return de_rham(s, Level::d); };
  auto sgn = [](Parity p) { return Rational(is_odd(p) ? -1 : 1); };
  auto v = [&](const std::string& n) { return var(F, n); };
  auto dv = [&](const std::string& n) { return var(F, std::string(kFormPrefix) + n); };

  switch (which) {
    case IdentificationCase::MX:
    case IdentificationCase::oddMX: {
      const bool odd = which == IdentificationCase::oddMX;
      const SuperSeries left = liouville(id.left, odd ? Liouville::lambda_E : Liouville::theta_E);
      const SuperSeries right_raw =
          liouville(id.right, odd ? Liouville::lambda_PiEstar : Liouville::theta_Estar);
      const SuperSeries right = substitute_form(right_raw, id.table, id.left);
      const std::string mp = odd ? "ys_" : "q_";
      SuperSeries pairing(F, kFormOrder);
      for (const auto& b : base->variables()) pairing += v("u_" + b.name) * v(mp + "u_" + b.name);
      rep.expect_zero("legendre", right - (left - d(pairing)));
      rep.expect_zero("symplectic", d(left) - d(right));

      // Literal coordinate expression of the symplectic form.
      SuperSeries omega(F, kFormOrder);
      SuperSeries omega_dual(with_forms(*id.right), kFormOrder);
      auto rv = [&](const std::string& n) { return var(omega_dual.chart(), n); };
      auto rdv = [&](const std::string& n) { return rv(std::string(kFormPrefix) + n); };
      for (const auto& b : base->variables()) {
        const Rational s = odd ? -sgn(b.parity) : Rational(1);  // (-1)^(a+1) in the odd case
        const std::string x = b.name, u = "u_" + b.name;
        omega += s * (dv(mp + x) * dv(x)) + s * (dv(mp + u) * dv(u));
        if (odd) {
          const std::string xi = "xi_" + b.name;
          // the sign of the xi term uses the parity of xi_i itself
          omega_dual += s * (rdv("ys_" + x) * rdv(x)) + sgn(b.parity) * (rdv("ys_" + xi) * rdv(xi));
        } else {
          const std::string w = "w_" + b.name;
          omega_dual += rdv("q_" + x) * rdv(x) + rdv("q_" + w) * rdv(w);
        }
      }
      rep.expect_zero("symplectic_literal", d(left) - omega);
      rep.expect_zero("symplectic_literal_dual",
                      d(left) - substitute_form(omega_dual, id.table, id.left));
      break;
    }
    case IdentificationCase::Tulczyjew:
    case IdentificationCase::oddTulczyjew: {
      const bool odd = which == IdentificationCase::oddTulczyjew;
      const SuperSeries lifted = liouville(id.left, odd ? Liouville::lambda_TM : Liouville::theta_TM);
      const SuperSeries right =
          substitute_form(liouville(id.right, odd ? Liouville::lambda_E : Liouville::theta_E),
                          id.table, id.left);
      const ChartPtr cot = extend_chart(*base, odd ? BundleKind::PiTstar : BundleKind::Tstar);
      const SuperSeries base_form =
          embed(liouville(cot, odd ? Liouville::lambda_E : Liouville::theta_E), F);
      rep.expect_zero("liouville", right - lifted);
      rep.expect_zero("lift", lifted - time_derivative(base_form));
      rep.expect_zero("symplectic", d(right) - d(lifted));
      rep.expect_zero("symplectic_lift", d(lifted) - time_derivative(d(base_form)));
      break;
    }
    case IdentificationCase::antiTulczyjew:
    case IdentificationCase::oddAntiTulczyjew: {
      const bool odd = which == IdentificationCase::oddAntiTulczyjew;
      const SuperSeries lifted =
          liouville(id.left, odd ? Liouville::lambda_PiTM : Liouville::theta_PiTM);
      const SuperSeries right =
          substitute_form(liouville(id.right, odd ? Liouville::lambda_E : Liouville::theta_E),
                          id.table, id.left);
      const ChartPtr cot = extend_chart(*base, odd ? BundleKind::Tstar : BundleKind::PiTstar);
      const SuperSeries base_form =
          embed(liouville(cot, odd ? Liouville::theta_E : Liouville::lambda_E), F);
      const SuperSeries dbase = de_rham(base_form, Level::partial);
      // partial(dx m) = -d(par x) m + (-1)^(a+1) dx par m
      const std::string mp = odd ? "q_" : "ys_";
      SuperSeries literal(F, kFormOrder);
      for (const auto& b : base->variables()) {
        const std::string x = b.name, m = mp + b.name;
        literal -= dv(std::string(kParPrefix) + x) * v(m);
        literal -= sgn(b.parity) * (dv(x) * v(std::string(kParPrefix) + m));
      }
      rep.expect_zero("liouville", right - lifted);
      rep.expect_zero("lift", lifted + dbase);
      rep.expect_zero("partial_literal", dbase - literal);
      rep.expect_zero("symplectic", d(right) - d(lifted));
      rep.expect_zero("symplectic_lift", d(lifted) - de_rham(d(base_form), Level::partial));
      break;
    }
  }
  (void)pairing_d;
  return rep;
}

// ---------------------------------------------------------------------------
// Prolongation of coordinate changes

namespace {

using Matrix = std::vector<std::vector<SuperSeries>>;

std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw Error("prolong_coordinate_change: non-invertible linear part");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

Matrix matmul(const Matrix& a, const Matrix& b, std::size_t n_trunc) {
  const std::size_t n = a.size();
  Matrix r;
  r.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<SuperSeries> row;
    for (std::size_t k = 0; k < n; ++k) {
      SuperSeries s(a[i][0].chart(), a[i][0].order());
      for (std::size_t j = 0; j < n; ++j)
        if (!a[i][j].is_zero() && !b[j][k].is_zero()) s += mul(a[i][j], b[j][k]);
      row.push_back(truncate_base_degree(s, n_trunc));
    }
    r.push_back(std::move(row));
  }
  return r;
}

}  // namespace

Substitution prolong_coordinate_change(const Substitution& change, const ChartPtr& ext,
                                       std::size_t n) {
  constexpr int order = kFormOrder;
  const Chart& c = *ext;
  Substitution img;
  for (const auto& v : c.variables()) {
    if (v.form) throw Error("prolong_coordinate_change: pass the chart without forms");
    if (v.layer != 0) continue;
    auto it = change.find(v.name);
    SuperSeries s = it != change.end() ? embed(it->second, ext, order)
                                       : SuperSeries::variable(ext, order, v.name);
    img.emplace(v.name, truncate_base_degree(s, n));
  }
  for (const auto& [name, s] : change)
    if (!c.contains(name) || c[c.index_of(name)].layer != 0)
      throw Error("prolong_coordinate_change: '" + name + "' is not a primary coordinate");

  for (int layer = 1; layer <= c.depth(); ++layer) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i].layer == layer) members.push_back(i);
    if (members.empty()) continue;
    const Role role = c[members.front()].role;

    if (role == Role::velocity || role == Role::odd_velocity) {
      Substitution der;
      for (std::size_t i : members)
        der.emplace(c[i].origin, SuperSeries::variable(ext, order, c[i].name));
      for (std::size_t i : members)
        img.emplace(c[i].name, truncate_base_degree(apply_derivation(img.at(c[i].origin), der), n));
      continue;
    }

    // Cotangent layer: coordinates are all variables of lower layers.
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i].layer < layer) coords.push_back(i);
    const std::size_t k = coords.size();
    Matrix J(k);
    std::vector<std::vector<Rational>> J0(k, std::vector<Rational>(k, 0));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        J[a].push_back(partial(img.at(c[coords[b]].name), coords[a]));
        J0[a][b] = J[a].back().constant_term();
      }
    const auto J0inv = invert(J0);
    // M = J0^{-1} (J - J0)
    Matrix J0inv_s(k), K(k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        J0inv_s[a].push_back(SuperSeries::constant(ext, order, J0inv[a][b]));
        K[a].push_back(J[a][b] - SuperSeries::constant(ext, order, J0[a][b]));
      }
    Matrix M = matmul(J0inv_s, K, n);
    for (auto& row : M)
      for (auto& e : row) e = -e;
    // J^{-1} = sum_k (-M)^k J0^{-1}
    Matrix term = J0inv_s, inv = J0inv_s;
    for (std::size_t step = 1; step <= n; ++step) {
      term = matmul(M, term, n);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) inv[a][b] += term[a][b];
    }
    // m'_B = sum_A (J^{-1})_B^A m_A
    std::vector<std::optional<std::size_t>> mom_of(c.size());
    for (std::size_t i : members) mom_of[c.index_of(c[i].conjugate)] = i;
    for (std::size_t i : members) {
      const std::size_t B =
          std::find(coords.begin(), coords.end(), c.index_of(c[i].conjugate)) - coords.begin();
      SuperSeries s(ext, order);
      for (std::size_t A = 0; A < k; ++A) {
        auto m = mom_of[coords[A]];
        if (!m || inv[B][A].is_zero()) continue;
        s += mul(inv[B][A], SuperSeries::variable(ext, order, c[*m].name));
      }
      img.emplace(c[i].name, truncate_base_degree(s, n));
    }
  }
  return img;
}

}  // namespace mfc
