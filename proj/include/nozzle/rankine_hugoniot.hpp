#ifndef NOZZLE_RANKINE_HUGONIOT_HPP_
#define NOZZLE_RANKINE_HUGONIOT_HPP_

#include <array>
#include <vector>

#include "nozzle/gas.hpp"

namespace nozzle::rh {

// Two-sided data at one point of the shock front.  two_eta_over_r is the
// local Lagrangian geometry factor (axis limit handled by the caller through
// lagrange::two_eta_over_r); psi_prime is the local front slope d psi/d eta.
struct FrontPoint {
  gas::FlowState minus;
  gas::FlowState plus;
  double two_eta_over_r = 2.0;
  double psi_prime = 0.0;
};

// Jump functionals whose simultaneous zero is the full set of shock relations
// in the streamline coordinates.  With [f] := f+ - f- and u = q cos(theta),
// v = q sin(theta), rho = rho(p, s):
//   G1 = [1/(rho u)] [p] + [v/u] [v]
//   G2 = [u + p/(rho u)] [p] + [p v/u] [v]
//   G3 = [q^2/2 + i]
//   G4 = [v] - psi' (r/(2 eta)) [p]
// G1..G3 are slope-free combinations of the mass/momentum fluxes; G4 carries
// the front slope.  All four vanish identically at the background normal shock.
std::array<double, 4> g_functionals(const gas::GasModel& g, const FrontPoint& fp);

// First-order data of the jump functionals at the background shock, in the
// state components (theta, p, q, s):  G_j ~ alpha[j][+] . dU+ + alpha[j][-] . dU-.
// Also carries the 3x3 front system A_s (rows alpha_{j+} restricted to
// (p,q,s), j = 1..3, whose theta components vanish) and the closed-form linear
// response g_j = c_j * pdot- of the downstream front traces to an upstream
// pressure perturbation with qdot- = -pdot-/(rho- q-), sdot- = 0.
struct LinearizedJump {
  std::array<std::array<double, 4>, 4> alpha_minus;  // alpha[j][component]
  std::array<std::array<double, 4>, 4> alpha_plus;
  std::array<std::array<double, 3>, 3> A_s;
  double det_A_s = 0.0;
  double p_jump = 0.0;  // [p-bar] > 0 for a compressive shock
  double kdot = 0.0;    // [p] ((gamma-1)/(gamma p+) + 1/(rho+ q+^2))
  double g1_per_pminus = 0.0;
  double g2_per_pminus = 0.0;
  double g3_per_pminus = 0.0;
  gas::NormalState bar_minus, bar_plus;
};

LinearizedJump linearized_coefficients(const gas::GasModel& g,
                                       const gas::NormalState& minus,
                                       const gas::NormalState& plus);

// Solve A_s (p,q,s)^T = rhs exactly (3x3, shielded by det_A_s != 0).
std::array<double, 3> solve_front_system(const LinearizedJump& lin,
                                         const std::array<double, 3>& rhs);

// Closed-form downstream front traces induced by an upstream pressure profile:
// returns {g1, g2, g3} with g_k[j] = c_k * pminus_dot[j].
std::array<std::vector<double>, 3> linearized_jump(const LinearizedJump& lin,
                                                   const std::vector<double>& pminus_dot);

// Front-slope update from the fourth jump relation:
//   psi' = 2 (q+ theta_front - G4_excess) / [p],
// where G4_excess is whatever the caller wants subtracted (zero for the
// initial approximation, the Newton correction term during iterations).
double slope_update(const LinearizedJump& lin, double theta_front, double g4_excess);

}  // namespace nozzle::rh

#endif  // NOZZLE_RANKINE_HUGONIOT_HPP_
