#pragma once

// Tangent and antitangent lifts of thick morphisms.

#include "mfc/morphisms.hpp"
#include "mfc/report.hpp"

namespace mfc {

enum class LiftKind { tangent, antitangent };
std::string_view to_string(LiftKind k);

/// Generating function x'^a dS/dx^a + q'_i dS/dq_i on the lifted charts, where the
/// primes are the dot_ (tangent) or par_ (antitangent) variables. The antitangent
/// lift flips the kind.
ThickMorphism tangent_lift(const ThickMorphism& phi);
ThickMorphism antitangent_lift(const ThickMorphism& phi);
ThickMorphism lift(const ThickMorphism& phi, LiftKind k);

/// Lift of a classical map to the tangent bundles (velocities by the chain rule).
ClassicalMap tangent_prolongation(const ClassicalMap& phi);

/// Pullbacks of a velocity-independent function `g` through the tangent lift, compared
/// with the lifted pullbacks along the projections.
Report check_bundle_morphism(const ThickMorphism& phi, const SuperSeries& g, int eps_order);

/// Literal form: TPhi*(pi2* g) = pi1*(Phi* g). Exposed separately for the acceptance gate.
SuperSeries bundle_morphism_literal_residual(const ThickMorphism& phi, const SuperSeries& g,
                                             int eps_order);

/// lift(compose(psi, phi)) = compose(lift(psi), lift(phi)) to `order`.
Report check_functoriality(const ThickMorphism& psi, const ThickMorphism& phi, LiftKind k,
                           int order);

}  // namespace mfc
