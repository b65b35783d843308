#pragma once

// Thick morphisms: generating functions, base maps, the relation identity,
// nonlinear pullbacks and composition.

#include <string>
#include <vector>

#include "mfc/report.hpp"
#include "mfc/superalg.hpp"

namespace mfc {

enum class Kind { even, odd };
constexpr Parity parity_of(Kind k) { return k == Kind::even ? Parity::even : Parity::odd; }
constexpr Kind flip(Kind k) { return k == Kind::even ? Kind::odd : Kind::even; }
std::string_view to_string(Kind k);

inline constexpr std::string_view kEpsName = "eps";

/// Momentum-class variables conjugate to the coordinates of `c`: `q_<v>` (even kind)
/// or `ys_<v>` (odd kind), in chart order.
std::vector<Variable> conjugate_momenta(const Chart& c, Kind k);

/// Chart of the non-momentum variables of `base` followed by `momenta`.
ChartPtr phase_chart(const Chart& base, const std::vector<Variable>& momenta, std::string name);

struct ThickMorphism {
  ChartPtr source;
  ChartPtr target;
  Kind kind = Kind::even;
  SuperSeries S;
  int order = 0;
  bool strict = true;
  // Source and target (anti)cotangent charts; momenta carry their conjugate and sign.
  ChartPtr source_phase;
  ChartPtr target_phase;

  /// Momentum variables of S, one per target coordinate, in target chart order.
  std::vector<std::size_t> momentum_slots() const;
};

/// Per target coordinate, a series on the source chart.
struct ClassicalMap {
  ChartPtr source;
  ChartPtr target;
  std::vector<SuperSeries> components;
};

/// Chart on which the generating function lives: source coordinates then target momenta.
ChartPtr generating_chart(const ChartPtr& source, const ChartPtr& target, Kind k);

/// Validate and build. `S` may live on any chart whose variables are among those of the
/// generating chart; it is re-expressed there.
ThickMorphism mk_thick(const ChartPtr& source, const ChartPtr& target, Kind kind,
                       const SuperSeries& S, int order, bool strict = true);
/// Build from explicit (possibly lifted) phase charts; S must live on the chart made
/// of the source coordinates and the target momenta.
ThickMorphism mk_thick(const ChartPtr& source, const ChartPtr& target, Kind kind,
                       const SuperSeries& S, int order, bool strict, ChartPtr source_phase,
                       ChartPtr target_phase);

ThickMorphism from_classical(const ClassicalMap& phi, Kind kind, int order);
ClassicalMap identity_map(const ChartPtr& c);
ClassicalMap compose(const ClassicalMap& psi, const ClassicalMap& phi);

/// Images y^I(x; q) of the target coordinates on the generating chart.
std::vector<SuperSeries> target_images(const ThickMorphism& phi);
/// Canonical source momenta p_a(x; q) = dS/dx^a on the generating chart.
std::vector<SuperSeries> source_momenta(const ThickMorphism& phi);

ClassicalMap base_map(const ThickMorphism& phi);

/// dY^I P_I - dx^a p_a - d(Y^I P_I - S) on the form chart of the generating chart.
SuperSeries relation_residual(const ThickMorphism& phi, const std::vector<SuperSeries>& y_images);
Report relation_check(const ThickMorphism& phi);

/// Nonlinear pullback of `g` (a series on the target chart, optionally with extra
/// parameter variables) tensored with eps. Result lives on eps + source + parameters.
SuperSeries pullback(const ThickMorphism& phi, const SuperSeries& g, int eps_order);
/// Pullback of a function that already carries its eps grading (its eps-free part
/// must be constant in the target coordinates).
SuperSeries pullback_raw(const ThickMorphism& phi, const SuperSeries& F, int eps_order);

/// Composition psi after phi.
ThickMorphism compose(const ThickMorphism& psi, const ThickMorphism& phi, int order);

/// Express `a` on the chart of `like` (by variable names) and subtract.
SuperSeries difference(const SuperSeries& a, const SuperSeries& like);

}  // namespace mfc
