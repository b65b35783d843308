#pragma once

// (Anti)tangent and (anti)cotangent chart extensions, exterior calculus on
// form charts, Liouville forms, canonical brackets, and the natural
// identifications between iterated bundles.

#include <string>
#include <vector>

#include "mfc/report.hpp"
#include "mfc/superalg.hpp"

namespace mfc {

enum class BundleKind { T, PiT, Tstar, PiTstar };
std::string_view to_string(BundleKind k);

inline constexpr int kMaxBundleDepth = 2;

/// Prefixes of derived variable names; part of the text format.
inline constexpr std::string_view kDotPrefix = "dot_";
inline constexpr std::string_view kParPrefix = "par_";
inline constexpr std::string_view kMomentumPrefix = "q_";
inline constexpr std::string_view kAntimomentumPrefix = "ys_";
inline constexpr std::string_view kFormPrefix = "d_";

/// Append the variables of the bundle `k` over `c`.
ChartPtr extend_chart(const Chart& c, BundleKind k);
ChartPtr extend_chart(const ChartPtr& c, std::initializer_list<BundleKind> ks);

/// Add the d-level: one parity-flipped differential `d_v` for every variable.
ChartPtr with_forms(const Chart& c);
/// Chart of `s` extended by forms, and `s` re-expressed there.
SuperSeries as_form(const SuperSeries& s);

enum class Level { d, partial };

/// de Rham operator: `d` on the form level, or `partial` on the first antitangent level.
/// The two anticommute; each squares to zero.
SuperSeries de_rham(const SuperSeries& w, Level level);
/// The formal time derivative on a tangent level (commutes with d).
SuperSeries time_derivative(const SuperSeries& w);
/// Images of the de Rham `partial` as a derivation (empty if the chart has no level).
Substitution partial_images(const ChartPtr& c, int order);

enum class Liouville {
  theta_E,        // dx^a p_a + du^i p_i on T*E
  theta_Estar,    // dx^a p_a + du_i p^i on T*(E*)
  lambda_E,       // dx^a x*_a + du^i u*_i on PiT*E
  lambda_PiEstar, // dx^a x*_a + dxi_i xi*^i on PiT*(PiE*)
  theta_TM,       // dx dot_p + d(dot_x) p on T(T*M)
  lambda_TM,      // dx dot_x* + d(dot_x) x* on T(PiT*M)
  theta_PiTM,     // dx (-1)^a par_x* + d(par_x) x* on PiT(PiT*M)
  lambda_PiTM,    // dx (-1)^a par_p + d(par_x) p on PiT(T*M)
};

/// Literal coordinate expression of a Liouville form, on the form chart over `c`.
SuperSeries liouville(const ChartPtr& c, Liouville which, int order = 2);

enum class Structure { even, odd };

/// Canonical Darboux bracket ({x, p} = 1) using the momentum metadata of the chart.
SuperSeries poisson_bracket(const SuperSeries& a, const SuperSeries& b, Structure s);

enum class IdentificationCase { MX, oddMX, Tulczyjew, oddTulczyjew, antiTulczyjew, oddAntiTulczyjew };
std::string_view to_string(IdentificationCase c);
inline constexpr IdentificationCase kAllIdentifications[] = {
    IdentificationCase::MX,           IdentificationCase::oddMX,
    IdentificationCase::Tulczyjew,    IdentificationCase::oddTulczyjew,
    IdentificationCase::antiTulczyjew, IdentificationCase::oddAntiTulczyjew};

/// Sign convention of the identifications: the Mackenzie-Xu map is taken as a
/// symplectomorphism (u_i = p_i, p^i = -(-1)^i u^i), not an antisymplectomorphism.
inline constexpr bool kIdentificationIsSymplectomorphism = true;

/// An identification as a substitution: variables of `right` expressed on `left`.
struct Identification {
  IdentificationCase which;
  ChartPtr left;
  ChartPtr right;
  Substitution table;
};

/// Build the identification for base chart `base` (fiber shaped like `base` for the MX cases).
Identification make_identification(IdentificationCase which, const ChartPtr& base);

/// Run every identity of the case; residuals are exact.
Report verify_identification(IdentificationCase which, const ChartPtr& base);

/// Substitute base variables of a form and prolong to the d-level by `d`.
SuperSeries substitute_form(const SuperSeries& w, const Substitution& sigma, const ChartPtr& out);

/// Extend a change of primary coordinates to every layer of `ext`: velocities by
/// formal differentiation, (anti)momenta by the inverse Jacobian. Inverses are
/// truncated at base degree `n`. `change` maps primary variable names to series on
/// the primary chart.
Substitution prolong_coordinate_change(const Substitution& change, const ChartPtr& ext,
                                       std::size_t n);

}  // namespace mfc
