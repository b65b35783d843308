#include "mfc/suites.hpp"

#include "mfc/functors.hpp"
#include "mfc/qcalc.hpp"
#include "mfc/superforms.hpp"
#include "mfc/testkit.hpp"
#include "mfc/textio.hpp"

namespace mfc {

namespace {

// Aggregates many trials into one report line; keeps the first failing residual.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  void add(const SuperSeries& residual) {
    ++trials_;
    if (!residual.is_zero() && ok_) {
      ok_ = false;
      first_ = residual;
    }
  }
  void add(bool ok) {
    ++trials_;
    ok_ = ok_ && ok;
  }
  void add(const Report& r) {
    ++trials_;
    for (const auto& c : r.checks()) {
      if (c.passed || !ok_) continue;
      ok_ = false;
      if (c.residual) first_ = *c.residual;
      failed_check_ = c.name;
    }
  }
  void emit(Report& rep) const {
    if (ok_)
      rep.expect(name_, true);
    else if (first_)
      rep.expect_zero(name_, *first_);
    else
      rep.expect(name_, false, failed_check_);
  }

 private:
  std::string name_;
  bool ok_ = true;
  int trials_ = 0;
  std::optional<SuperSeries> first_;
  std::string failed_check_;
};

struct Charts {
  ChartPtr m1, m2, m3;
};

Charts random_charts(Generator& gen) {
  return {gen.chart("M", "x", "th"), gen.chart("N", "y", "et"), gen.chart("P", "z", "ze")};
}

const char* kind_name(Kind k) { return k == Kind::even ? "even" : "odd"; }

// `b` with its momenta renamed to the momenta of `a` that share the conjugate coordinate.
SuperSeries rename_momenta(const ThickMorphism& a, const ThickMorphism& b) {
  const Chart& ga = *a.S.chart();
  Substitution sub;
  for (const auto& m : b.S.chart()->variables()) {
    if (!m.momentum_class()) continue;
    for (const auto& n : ga.variables())
      if (n.momentum_class() && n.conjugate == m.conjugate)
        sub.emplace(m.name, SuperSeries::variable(a.S.chart(), a.order, n.name) *
                                (Rational(m.sign) * Rational(n.sign)));
  }
  return substitute(b.S, sub, a.S.chart(), a.order);
}

SuperSeries eps_times(const ChartPtr& W, int order, const SuperSeries& s) {
  return mul(SuperSeries::variable(W, order, kEpsName), embed(s, W, order));
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identifications", "functoriality", "qmorphism",
                                              "pullback-props"};
  return names;
}

Report run_suite(std::string_view name, const SuiteOptions& o) {
  if (name == "identifications") return identification_suite(o);
  if (name == "functoriality") return functoriality_suite(o);
  if (name == "qmorphism") return qmorphism_suite(o);
  if (name == "pullback-props") return pullback_suite(o);
  throw Error("unknown suite '" + std::string(name) + "'");
}

Report identification_suite(const SuiteOptions& o) {
  Report rep;
  Generator gen(o.seed);
  const std::pair<int, int> dims[] = {{1, 0}, {1, 1}, {2, 1}};
  for (auto which : kAllIdentifications) {
    for (auto [e, od] : dims) {
      const ChartPtr base = gen.chart("M", "x", "th", e, od);
      rep.append(verify_identification(which, base), std::string(to_string(which)) + ".(" +
                                                         std::to_string(e) + "|" + std::to_string(od) + ")");
    }
  }

  struct FormCase {
    const char* name;
    std::vector<BundleKind> bundle;
    Liouville form;
  };
  const FormCase forms[] = {
      {"theta_M", {BundleKind::Tstar}, Liouville::theta_E},
      {"lambda_M", {BundleKind::PiTstar}, Liouville::lambda_E},
      {"theta_TM", {BundleKind::Tstar, BundleKind::T}, Liouville::theta_TM},
      {"lambda_TM", {BundleKind::PiTstar, BundleKind::T}, Liouville::lambda_TM},
      {"theta_PiTM", {BundleKind::PiTstar, BundleKind::PiT}, Liouville::theta_PiTM},
      {"lambda_PiTM", {BundleKind::Tstar, BundleKind::PiT}, Liouville::lambda_PiTM},
  };
  const std::size_t n = static_cast<std::size_t>(o.order);
  for (const auto& f : forms) {
    Tally t(std::string("invariance.") + f.name);
    for (int trial = 0; trial < o.trials; ++trial) {
      const ChartPtr base = gen.chart("M", "x", "th");
      ChartPtr ext = base;
      for (auto k : f.bundle) ext = extend_chart(*ext, k);
      const Substitution change = prolong_coordinate_change(gen.coordinate_change(base), ext, n + 2);
      const SuperSeries theta = liouville(ext, f.form);
      t.add(truncate_base_degree(substitute_form(theta, change, ext) - theta, n));
    }
    t.emit(rep);
  }
  return rep;
}

Report functoriality_suite(const SuiteOptions& o) {
  Report rep;
  Generator gen(o.seed);
  for (Kind kind : {Kind::even, Kind::odd}) {
    const std::string k = kind_name(kind);
    Tally tan("functoriality." + k + ".tangent"), anti("functoriality." + k + ".antitangent");
    Tally classical("tangent_classical." + k), identity("identity." + k);
    Tally relation("lifted_relation." + k), degree("lift_degree." + k);
    Tally proj("bundle." + k + ".projection"), base("bundle." + k + ".base_projection");
    Tally vel("bundle." + k + ".velocity");
    for (int trial = 0; trial < o.trials; ++trial) {
      const Charts c = random_charts(gen);
      const ThickMorphism phi = gen.morphism(c.m1, c.m2, kind, o.order);
      const ThickMorphism psi = gen.morphism(c.m2, c.m3, kind, o.order);
      tan.add(check_functoriality(psi, phi, LiftKind::tangent, o.order));
      anti.add(check_functoriality(psi, phi, LiftKind::antitangent, o.order));

      const ClassicalMap cl = gen.classical_map(c.m1, c.m2);
      const ThickMorphism lifted = tangent_lift(from_classical(cl, kind, o.order));
      const ThickMorphism direct = from_classical(tangent_prolongation(cl), kind, o.order);
      classical.add(lifted.S - rename_momenta(lifted, direct));

      const ThickMorphism id = from_classical(identity_map(c.m1), kind, o.order);
      for (LiftKind lk : {LiftKind::tangent, LiftKind::antitangent}) {
        const ThickMorphism l = lift(id, lk);
        const ThickMorphism want = from_classical(identity_map(l.source), l.kind, o.order);
        identity.add(l.S - rename_momenta(l, want));
        relation.add(relation_check(lift(phi, lk)));
        // Euler operator in the primed variables.
        const ThickMorphism lp = lift(phi, lk);
        Substitution primed;
        for (const auto& v : lp.S.chart()->variables())
          if (!v.origin.empty() && lp.S.chart()->contains(v.origin))
            primed.emplace(v.name, SuperSeries::variable(lp.S.chart(), lp.order, v.name));
        degree.add(apply_derivation(lp.S, primed) - lp.S);
      }

      const SuperSeries g = gen.series(c.m2, o.order, parity_of(kind), 3, 4);
      const int ne = std::min(o.order, 2);
      const Report b = check_bundle_morphism(phi, g, ne);
      for (const auto& ch : b.checks()) {
        if (ch.name.starts_with("projection"))
          proj.add(ch.passed);
        else if (ch.name == "base_projection")
          base.add(ch.passed);
        else if (ch.name == "velocity")
          vel.add(ch.passed);
      }
    }
    for (const Tally* t : {&tan, &anti, &classical, &identity, &relation, &degree, &proj, &base, &vel})
      t->emit(rep);
  }
  return rep;
}

Report qmorphism_suite(const SuiteOptions& o) {
  Report rep;
  Generator gen(o.seed);
  const int ne = std::min(o.order, 2);
  std::optional<int> sigma;
  bool sigma_consistent = true;
  for (Kind kind : {Kind::even, Kind::odd}) {
    const std::string k = kind_name(kind);
    Tally q("antitangent_q." + k), neg("negative_control." + k), closed("closedness." + k);
    Tally inter("intertwining." + k), hom("derivative_homomorphism." + k);
    for (int trial = 0; trial < o.trials; ++trial) {
      const Charts c = random_charts(gen);
      const ThickMorphism phi = gen.morphism(c.m1, c.m2, kind, o.order);
      q.add(check_antitangent_q(phi));

      // Flip the sign of the momentum part of the lifted generating function.
      const ThickMorphism L = antitangent_lift(phi);
      SuperSeries bad(L.S.chart(), L.order);
      for (const auto& [m, coef] : L.S.terms()) {
        bool dq = false;
        for (std::size_t i = 0; i < m.e.size(); ++i)
          if (m.e[i] && (*L.S.chart())[i].momentum_class() && !(*L.S.chart())[i].origin.empty()) dq = true;
        bad.add_term(m, dq ? -coef : coef);
      }
      bool depends_on_source = false;
      for (const auto& v : phi.source->variables())
        if (!partial(phi.S, v.name).is_zero()) depends_on_source = true;
      if (depends_on_source) {
        const ThickMorphism corrupt = mk_thick(L.source, L.target, L.kind, bad, L.order, true,
                                               L.source_phase, L.target_phase);
        const SuperSeries H1 = hamiltonian_of_field(de_rham_field(L.source), L.source_phase);
        const SuperSeries H2 = hamiltonian_of_field(de_rham_field(L.target), L.target_phase);
        neg.add(!q_morphism_residual(corrupt, H1, H2).is_zero());
      }

      const ChartPtr pit = L.target;
      const SuperSeries f = gen.series(c.m2, 0, flip(parity_of(L.kind)), 3, 3);
      closed.add(closedness_check(phi, de_rham(embed(f, pit), Level::partial), ne));

      const SuperSeries w = gen.series(pit, 0, parity_of(L.kind), 3, 4);
      inter.add(intertwining_check(phi, w, ne));

      const ClassicalMap cl = gen.classical_map(c.m1, c.m2);
      const auto s = calibrate_intertwining_sign(from_classical(cl, kind, o.order), w, ne);
      if (!s) {
        sigma_consistent = false;
      } else if (*s != 0) {
        if (sigma && *sigma != *s) sigma_consistent = false;
        sigma = *s;
      }

      const SuperSeries f0 = gen.series(c.m2, 0, parity_of(kind), 3, 3);
      const SuperSeries g = gen.series(c.m2, 0, gen.coin() ? Parity::odd : Parity::even, 2, 3);
      const SuperSeries h = gen.series(c.m2, 0, gen.coin() ? Parity::odd : Parity::even, 2, 3);
      hom.add(derivative_homomorphism_check(phi, f0, g, h, ne));
    }
    for (const Tally* t : {&q, &neg, &closed, &inter, &hom}) t->emit(rep);
  }
  rep.expect("intertwining_sign.consistent", sigma_consistent && (!sigma || *sigma == kIntertwiningSign),
             sigma ? "sigma=" + std::to_string(*sigma) : "sigma undetermined");
  return rep;
}

Report pullback_suite(const SuiteOptions& o) {
  Report rep;
  Generator gen(o.seed);
  const int ne = o.order;
  {
    const ChartPtr M = Chart::coordinates("M", {{"x", Parity::even}});
    const ChartPtr N = Chart::coordinates("N", {{"y", Parity::even}});
    const ChartPtr G = generating_chart(M, N, Kind::even);
    const ThickMorphism phi = mk_thick(M, N, Kind::even, parse_expression("x*q_y + 1/2*q_y^2", G, 3), 3);
    const SuperSeries g = parse_expression("y^2", N, 0);
    const std::string got = serialize(pullback(phi, g, 2));
    rep.expect("running_example", got == "eps*x^2 + 2*eps^2*x^2" &&
                                      serialize(oracle_pullback_naive(phi, g, 2)) == got,
               got);
  }
  for (Kind kind : {Kind::even, Kind::odd}) {
    const std::string k = kind_name(kind);
    Tally classical("classical_reduction." + k), oracle("solver_oracle." + k);
    Tally contra("contravariance." + k), relation("relation." + k), base("base_map_compose." + k);
    Tally assoc("associativity." + k), constant("constant_function." + k);
    for (int trial = 0; trial < o.trials; ++trial) {
      const Charts c = random_charts(gen);
      const ClassicalMap cl = gen.classical_map(c.m1, c.m2);
      const SuperSeries g = gen.series(c.m2, 0, parity_of(kind), 3, 4);
      const SuperSeries pb = pullback(from_classical(cl, kind, o.order), g, ne);
      classical.add(pb - eps_times(pb.chart(), ne, oracle_pullback_classical(cl, g)));

      const ThickMorphism phi = gen.morphism(c.m1, c.m2, kind, o.order);
      oracle.add(serialize(pullback(phi, g, ne)) == serialize(oracle_pullback_naive(phi, g, ne)));
      relation.add(relation_check(phi));

      const ThickMorphism psi = gen.morphism(c.m2, c.m3, kind, o.order);
      const ThickMorphism th = gen.morphism(c.m3, gen.chart("Q", "w", "om"), kind, o.order);
      const SuperSeries h = gen.series(c.m3, 0, parity_of(kind), 3, 4);
      const SuperSeries lhs = pullback(compose(psi, phi, o.order), h, ne);
      contra.add(lhs - embed(pullback_raw(phi, pullback(psi, h, ne), ne), lhs.chart(), ne));

      const ClassicalMap b1 = base_map(compose(psi, phi, o.order));
      const ClassicalMap b2 = compose(base_map(psi), base_map(phi));
      bool same = true;
      for (std::size_t i = 0; i < b1.components.size(); ++i)
        same = same && (b1.components[i] - b2.components[i]).is_zero();
      base.add(same);

      const ThickMorphism a1 = compose(th, compose(psi, phi, o.order), o.order);
      const ThickMorphism a2 = compose(compose(th, psi, o.order), phi, o.order);
      assoc.add(difference(a1.S, a2.S));

      if (kind == Kind::even) {
        const SuperSeries cst = SuperSeries::constant(c.m2, 0, gen.coefficient());
        const SuperSeries p = pullback(phi, cst, ne);
        const std::vector<std::string> momenta = [&] {
          std::vector<std::string> v;
          for (const auto& x : phi.S.chart()->variables())
            if (x.momentum_class()) v.push_back(x.name);
          return v;
        }();
        const SuperSeries s0 = set_zero(phi.S, momenta, phi.source);
        constant.add(p - eps_times(p.chart(), ne, cst) - embed(s0, p.chart(), ne));
      }
    }
    for (const Tally* t : {&classical, &oracle, &contra, &relation, &base, &assoc, &constant}) t->emit(rep);
  }
  return rep;
}

}  // namespace mfc
