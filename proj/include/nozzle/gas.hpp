#ifndef NOZZLE_GAS_HPP_
#define NOZZLE_GAS_HPP_

#include <array>

namespace nozzle::gas {

// Polytropic ideal gas, p = A(s) rho^gamma with A(s) = (gamma-1) exp((s-s0)/cv),
// so that A(s0) = gamma - 1.  All one-point thermodynamic relations live here.
struct GasModel {
  double gamma = 1.4;
  double cv = 1.0;
  double s0 = 0.0;

  // Throws ConfigError unless gamma > 1 and cv > 0.
  void validate() const;

  double mu2() const { return (gamma - 1.0) / (gamma + 1.0); }

  double entropy_coefficient(double s) const;       // A(s)
  double pressure(double rho, double s) const;      // p = A(s) rho^gamma
  double density(double p, double s) const;         // rho = (p / A(s))^(1/gamma)
  double entropy(double p, double rho) const;       // s from p, rho
  double sound_speed2(double p, double rho) const;  // c^2 = gamma p / rho
  double sound_speed(double p, double rho) const;
  double mach(double q, double p, double rho) const;
  double enthalpy(double p, double rho) const;      // i = gamma p / ((gamma-1) rho)
  double bernoulli(double q, double p, double rho) const;  // B = q^2/2 + i
  double temperature(double p, double rho) const;   // T = p / ((gamma-1) cv rho)
};

// Flow state in the unknowns the solver marches: flow angle theta, pressure p,
// speed q, entropy s.  Velocity components are u = q cos(theta), v = q sin(theta).
struct FlowState {
  double theta = 0.0;
  double p = 0.0;
  double q = 0.0;
  double s = 0.0;
};

// One-dimensional normal-shock data: speed is the velocity component normal to
// the front; theta plays no role and the tangential component is continuous.
struct NormalState {
  double p = 0.0;
  double rho = 0.0;
  double q = 0.0;
};

// Critical speed squared, c*^2 = mu^2 q^2 + (2/(gamma+1)) c^2.  Across a normal
// shock the Prandtl relation q+ q- = c*^2 holds with the same c*.
double critical_speed2(const GasModel& gas, const NormalState& state);

// Downstream state of a normal shock from the closed-form jump relations:
//   p+   = ((1+mu^2) M-^2 - mu^2) p-
//   q+   = c*^2 / q-
//   rho+ = rho- q- / q+
// Requires supersonic upstream flow (M- > 1); throws PhysicsError otherwise.
NormalState normal_shock_downstream(const GasModel& gas, const NormalState& minus);

// Raw conservation residuals for a candidate upstream/downstream pair:
//   {mass flux, momentum flux, Bernoulli, entropy jump s+ - s-}.
// The first three vanish for any pair satisfying the jump conditions; the last
// is reported so callers can check the admissibility sign s+ > s-.
std::array<double, 4> rh_residual_normal(const GasModel& gas,
                                         const NormalState& minus,
                                         const NormalState& plus);

// Affine change of variables rho' = a rho, q' = b q, s' = s - gamma cv ln(a)
// with a b^2 = 1, which leaves p, M and the products rho q^k b^k ... invariant
// and is used to put the background mass flux at rho q = 2 so the duct wall
// sits at unit Lagrangian radius.  apply/unapply are exact mutual inverses.
struct Normalization {
  double a = 1.0;       // density factor
  double b = 1.0;       // speed factor
  double s_shift = 0.0; // additive entropy shift

  static Normalization from_mass_flux(const GasModel& gas, double rho_q);
  static Normalization identity() { return {}; }

  NormalState apply(const NormalState& st) const;
  NormalState unapply(const NormalState& st) const;
  // theta is invariant; p is invariant.
  FlowState apply(const GasModel& gas, const FlowState& st) const;
  FlowState unapply(const GasModel& gas, const FlowState& st) const;
};

}  // namespace nozzle::gas

#endif  // NOZZLE_GAS_HPP_
