#ifndef NOZZLE_ADMISSIBILITY_HPP_
#define NOZZLE_ADMISSIBILITY_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "nozzle/gas.hpp"
#include "nozzle/profile.hpp"

namespace nozzle::adm {

// Pressure-matching functional for the shock position:
//   R(z) = ∫₀ᴸ Θ(t) dt − k̇ ∫₀ᶻ Θ(t) dt,
// whose root R(ξ*) = P̄e places the front.  The reachable band is the
// interval spanned by R(L) = (1 − k̇)∫₀ᴸΘ and R(0) = ∫₀ᴸΘ.
struct PositionProblem {
  const Profile* theta = nullptr;  // wall deflection profile Θ on [0, L]
  double length = 1.0;             // duct length L
  double kdot = 0.0;               // front sensitivity coefficient k̇ > 0
  double pe_bar = 0.0;             // weighted exit-pressure value P̄e
};

struct PositionResult {
  double xi_star = 0.0;       // root of R(z) = P̄e
  double band_lower = 0.0;    // R(L) = (1 − k̇)∫₀ᴸΘ
  double band_upper = 0.0;    // R(0) = ∫₀ᴸΘ
  double theta_at_root = 0.0; // Θ(ξ*), the slope scale of R at the root
  bool admissible = false;
};

// ∫ₐᵇ Θ via adaptive quadrature (handles table-backed profiles too).
double integral(const Profile& f, double a, double b);

double criterion_R(const PositionProblem& prob, double z);

// Exit-pressure weight B̄ = 2(1 − M₊²)/(ρ₊² q₊³) for the downstream
// background state, and the weighted functional P̄e = B̄ ∫₀¹ t·Pe(t) dt.
double exit_weight(const gas::GasModel& g, const gas::NormalState& plus);
double exit_pressure_functional(const gas::GasModel& g, const gas::NormalState& plus,
                                const Profile& pe);

std::pair<double, double> band(const PositionProblem& prob);

// Solves R(z) = P̄e on [0, L] (or on a caller-supplied bracket, for ducts
// whose R is non-monotone).  Throws PhysicsError when P̄e lies outside the
// reachable band, NumericsError when the bracket does not isolate a root.
PositionResult solve_shock_position(const PositionProblem& prob);
PositionResult solve_in_bracket(const PositionProblem& prob, double a, double b);

// Convenience for ducts with several admissible positions: one result per
// caller bracket.
std::vector<PositionResult> solve_multi(const PositionProblem& prob,
                                         const std::vector<std::pair<double, double>>& brackets);

}  // namespace nozzle::adm

#endif  // NOZZLE_ADMISSIBILITY_HPP_
