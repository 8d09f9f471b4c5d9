#include "nozzle/rankine_hugoniot.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "nozzle/errors.hpp"

namespace nozzle::rh {

std::array<double, 4> g_functionals(const gas::GasModel& g, const FrontPoint& fp) {
  const auto prim = [&g](const gas::FlowState& st) {
    struct Prim {
      double u, v, p, rho;
    } w{};
    w.u = st.q * std::cos(st.theta);
    w.v = st.q * std::sin(st.theta);
    w.p = st.p;
    w.rho = g.density(st.p, st.s);
    return w;
  };
  const auto m = prim(fp.minus);
  const auto p = prim(fp.plus);

  const double jp = p.p - m.p;
  const double jv = p.v - m.v;
  const double j_inv_rhou = 1.0 / (p.rho * p.u) - 1.0 / (m.rho * m.u);
  const double j_vu = p.v / p.u - m.v / m.u;
  const double j_mom = (p.u + p.p / (p.rho * p.u)) - (m.u + m.p / (m.rho * m.u));
  const double j_pvu = p.p * p.v / p.u - m.p * m.v / m.u;
  const double j_bern = g.bernoulli(fp.plus.q, p.p, p.rho) -
                        g.bernoulli(fp.minus.q, m.p, m.rho);
  const double r_over_2eta = 1.0 / fp.two_eta_over_r;

  return {
      j_inv_rhou * jp + j_vu * jv,
      j_mom * jp + j_pvu * jv,
      j_bern,
      jv - fp.psi_prime * r_over_2eta * jp,
  };
}

LinearizedJump linearized_coefficients(const gas::GasModel& g,
                                       const gas::NormalState& minus,
                                       const gas::NormalState& plus) {
  LinearizedJump lin;
  lin.bar_minus = minus;
  lin.bar_plus = plus;
  lin.p_jump = plus.p - minus.p;
  if (!(lin.p_jump > 0.0))
    throw PhysicsError("linearized_coefficients",
                       "background shock must be compressive ([p] > 0)");

  const double gamma = g.gamma, cv = g.cv;
  const auto fill = [&](const gas::NormalState& st, double sign,
                        std::array<std::array<double, 4>, 4>& alpha) {
    const double c2 = g.sound_speed2(st.p, st.rho);
    const double T = g.temperature(st.p, st.rho);
    const double k = lin.p_jump / (st.rho * st.q);
    alpha[0] = {0.0, sign * k * (-1.0 / (st.rho * c2)), sign * k * (-1.0 / st.q),
                sign * k / (gamma * cv)};
    alpha[1] = {0.0, sign * k * (1.0 - st.p / (st.rho * c2)),
                sign * k * (st.rho * st.q - st.p / st.q),
                sign * k * st.p / (gamma * cv)};
    alpha[2] = {0.0, sign / st.rho, sign * st.q, sign * T};
    alpha[3] = {sign * st.q, 0.0, 0.0, 0.0};
  };
  fill(minus, -1.0, lin.alpha_minus);
  fill(plus, +1.0, lin.alpha_plus);

  for (int j = 0; j < 3; ++j)
    lin.A_s[j] = {lin.alpha_plus[j][1], lin.alpha_plus[j][2], lin.alpha_plus[j][3]};

  const double M2p = plus.q * plus.q / g.sound_speed2(plus.p, plus.rho);
  lin.det_A_s = lin.p_jump * lin.p_jump * plus.p * (1.0 - M2p) /
                ((gamma - 1.0) * cv * std::pow(plus.rho * plus.q, 3));
  if (std::abs(lin.det_A_s) < 1e-14)
    throw PhysicsError("linearized_coefficients",
                       "front system is singular (downstream flow sonic)");

  lin.kdot = lin.p_jump * ((gamma - 1.0) / (gamma * plus.p) +
                           1.0 / (plus.rho * plus.q * plus.q));

  // Closed-form response of the downstream traces to an upstream pressure
  // perturbation (with the upstream couplings q' = -p'/(rho q), s' = 0).
  const double M2m = minus.q * minus.q / g.sound_speed2(minus.p, minus.rho);
  const double Kt = (M2m - 1.0) / (minus.rho * minus.q * minus.q);
  const double Kh = plus.rho * plus.q * plus.q / (M2p - 1.0);
  lin.g1_per_pminus = Kh * Kt * (1.0 - lin.kdot);
  lin.g2_per_pminus = Kt / (plus.rho * plus.q) * (lin.p_jump - Kh * (1.0 - lin.kdot));
  lin.g3_per_pminus = -(gamma - 1.0) * cv / plus.p * Kt * lin.p_jump;
  return lin;
}

std::array<double, 3> solve_front_system(const LinearizedJump& lin,
                                         const std::array<double, 3>& rhs) {
  Eigen::Matrix3d A;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = lin.A_s[i][j];
  const Eigen::Vector3d b(rhs[0], rhs[1], rhs[2]);
  const Eigen::Vector3d x = A.partialPivLu().solve(b);
  return {x[0], x[1], x[2]};
}

std::array<std::vector<double>, 3> linearized_jump(const LinearizedJump& lin,
                                                   const std::vector<double>& pminus_dot) {
  std::array<std::vector<double>, 3> out;
  for (auto& v : out) v.resize(pminus_dot.size());
  for (size_t j = 0; j < pminus_dot.size(); ++j) {
    out[0][j] = lin.g1_per_pminus * pminus_dot[j];
    out[1][j] = lin.g2_per_pminus * pminus_dot[j];
    out[2][j] = lin.g3_per_pminus * pminus_dot[j];
  }
  return out;
}

double slope_update(const LinearizedJump& lin, double theta_front, double g4_excess) {
  return 2.0 * (lin.bar_plus.q * theta_front - g4_excess) / lin.p_jump;
}

}  // namespace nozzle::rh
