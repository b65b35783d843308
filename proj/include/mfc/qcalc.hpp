#pragma once

// Homological vector fields, the Hamilton-Jacobi residual of thick Q-morphisms,
// and pullback properties of forms.

#include <vector>

#include "mfc/morphisms.hpp"
#include "mfc/report.hpp"
#include "mfc/superforms.hpp"

namespace mfc {

/// Q = Q^A d/dZ^A with odd Q; one component per coordinate of `chart`.
struct HomologicalField {
  ChartPtr chart;
  std::vector<SuperSeries> components;
};

/// The de Rham differential on an antitangent chart: Q(x) = par_x, Q(par_x) = 0.
HomologicalField de_rham_field(const ChartPtr& pit_chart);

/// H = Q^A P_A on a phase chart over the field's chart (P the canonical momenta).
SuperSeries hamiltonian_of_field(const HomologicalField& Q, const ChartPtr& phase);

/// H2(Y(x, P), P) - H1(x, dS/dx) on the generating chart of `phi`.
SuperSeries q_morphism_residual(const ThickMorphism& phi, const SuperSeries& H1,
                                const SuperSeries& H2);

/// Antitangent lift with de Rham fields on both sides.
Report check_antitangent_q(const ThickMorphism& phi);

/// Requires d omega = 0 (throws otherwise); checks that the pullback of the form
/// `omega` (on the antitangent chart of the target) through the antitangent lift is closed.
Report closedness_check(const ThickMorphism& phi, const SuperSeries& omega, int eps_order);

/// D_f[u] from pullback(phi, f + t u) at first order in a nilpotent parameter t.
SuperSeries linearized_pullback(const ThickMorphism& phi, const SuperSeries& f,
                                const SuperSeries& u, int eps_order);
Report derivative_homomorphism_check(const ThickMorphism& phi, const SuperSeries& f,
                                     const SuperSeries& g, const SuperSeries& h, int eps_order);

/// Global sign between the linearized pullback of d(omega) and d of the pullback.
inline constexpr int kIntertwiningSign = 1;

/// eta-coefficient of pullback(PiT phi, omega + eta d omega) minus sigma d(pullback(PiT phi, omega)).
SuperSeries intertwining_residual(const ThickMorphism& phi, const SuperSeries& omega, int eps_order,
                                  int sigma);
Report intertwining_check(const ThickMorphism& phi, const SuperSeries& omega, int eps_order);

/// The sign demanded by a classical morphism: 0 if both signs work, nullopt if neither does.
std::optional<int> calibrate_intertwining_sign(const ThickMorphism& classical,
                                               const SuperSeries& omega, int eps_order);

}  // namespace mfc
