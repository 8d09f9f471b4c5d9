#include "nozzle/gas.hpp"

#include <cmath>

#include "nozzle/errors.hpp"

namespace nozzle::gas {

void GasModel::validate() const {
  if (!(gamma > 1.0))
    throw ConfigError("GasModel", "adiabatic exponent must satisfy gamma > 1");
  if (!(cv > 0.0))
    throw ConfigError("GasModel", "specific heat cv must be positive");
}

double GasModel::entropy_coefficient(double s) const {
  return (gamma - 1.0) * std::exp((s - s0) / cv);
}

double GasModel::pressure(double rho, double s) const {
  return entropy_coefficient(s) * std::pow(rho, gamma);
}

double GasModel::density(double p, double s) const {
  return std::pow(p / entropy_coefficient(s), 1.0 / gamma);
}

double GasModel::entropy(double p, double rho) const {
  return s0 + cv * std::log(p / ((gamma - 1.0) * std::pow(rho, gamma)));
}

double GasModel::sound_speed2(double p, double rho) const {
  return gamma * p / rho;
}

double GasModel::sound_speed(double p, double rho) const {
  return std::sqrt(sound_speed2(p, rho));
}

double GasModel::mach(double q, double p, double rho) const {
  return q / sound_speed(p, rho);
}

double GasModel::enthalpy(double p, double rho) const {
  return gamma * p / ((gamma - 1.0) * rho);
}

double GasModel::bernoulli(double q, double p, double rho) const {
  return 0.5 * q * q + enthalpy(p, rho);
}

double GasModel::temperature(double p, double rho) const {
  return p / ((gamma - 1.0) * cv * rho);
}

double critical_speed2(const GasModel& gas, const NormalState& st) {
  const double c2 = gas.sound_speed2(st.p, st.rho);
  return gas.mu2() * st.q * st.q + 2.0 / (gas.gamma + 1.0) * c2;
}

NormalState normal_shock_downstream(const GasModel& gas, const NormalState& minus) {
  const double mach = gas.mach(minus.q, minus.p, minus.rho);
  if (!(mach > 1.0))
    throw PhysicsError("normal_shock_downstream",
                       "upstream flow must be supersonic (M = " +
                           std::to_string(mach) + ")");
  const double mu2 = gas.mu2();
  NormalState plus;
  plus.p = ((1.0 + mu2) * mach * mach - mu2) * minus.p;
  plus.q = critical_speed2(gas, minus) / minus.q;  // Prandtl relation
  plus.rho = minus.rho * minus.q / plus.q;         // mass conservation
  return plus;
}

std::array<double, 4> rh_residual_normal(const GasModel& gas,
                                         const NormalState& minus,
                                         const NormalState& plus) {
  return {
      plus.rho * plus.q - minus.rho * minus.q,
      (plus.p + plus.rho * plus.q * plus.q) - (minus.p + minus.rho * minus.q * minus.q),
      gas.bernoulli(plus.q, plus.p, plus.rho) - gas.bernoulli(minus.q, minus.p, minus.rho),
      gas.entropy(plus.p, plus.rho) - gas.entropy(minus.p, minus.rho),
  };
}

Normalization Normalization::from_mass_flux(const GasModel& gas, double rho_q) {
  if (!(rho_q > 0.0))
    throw PhysicsError("Normalization", "mass flux rho*q must be positive");
  Normalization n;
  // rho' q' = (a b) rho q = 2  with  a b^2 = 1  =>  a = 4/m^2, b = m/2.
  n.a = 4.0 / (rho_q * rho_q);
  n.b = 0.5 * rho_q;
  n.s_shift = -gas.gamma * gas.cv * std::log(n.a);
  return n;
}

NormalState Normalization::apply(const NormalState& st) const {
  return {st.p, a * st.rho, b * st.q};
}

NormalState Normalization::unapply(const NormalState& st) const {
  return {st.p, st.rho / a, st.q / b};
}

FlowState Normalization::apply(const GasModel&, const FlowState& st) const {
  return {st.theta, st.p, b * st.q, st.s + s_shift};
}

FlowState Normalization::unapply(const GasModel&, const FlowState& st) const {
  return {st.theta, st.p, st.q / b, st.s - s_shift};
}

}  // namespace nozzle::gas
