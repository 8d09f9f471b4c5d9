#include "nozzle/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_roots.h>

#include "nozzle/errors.hpp"

namespace nozzle::adm {

namespace {

struct QuadTarget {
  const Profile* f;
  bool weight_by_t;
};

double quad_eval(double t, void* params) {
  const auto* tgt = static_cast<const QuadTarget*>(params);
  const double v = (*tgt->f)(t);
  return tgt->weight_by_t ? t * v : v;
}

double integrate(const Profile& f, double a, double b, bool weight_by_t) {
  if (a == b) return 0.0;
  gsl_set_error_handler_off();
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(512);
  QuadTarget tgt{&f, weight_by_t};
  gsl_function fn;
  fn.function = &quad_eval;
  fn.params = &tgt;
  double result = 0.0, abserr = 0.0;
  const int status = gsl_integration_qag(&fn, a, b, 1e-14, 1e-12, 512,
                                         GSL_INTEG_GAUSS61, ws, &result, &abserr);
  gsl_integration_workspace_free(ws);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw NumericsError("admissibility",
                        std::string("quadrature failed: ") + gsl_strerror(status));
  return result;
}

struct RootTarget {
  const PositionProblem* prob;
};

double root_eval(double z, void* params) {
  const auto* tgt = static_cast<const RootTarget*>(params);
  return criterion_R(*tgt->prob, z) - tgt->prob->pe_bar;
}

double brent(const PositionProblem& prob, double a, double b) {
  gsl_set_error_handler_off();
  RootTarget tgt{&prob};
  gsl_function fn;
  fn.function = &root_eval;
  fn.params = &tgt;
  gsl_root_fsolver* solver = gsl_root_fsolver_alloc(gsl_root_fsolver_brent);
  if (gsl_root_fsolver_set(solver, &fn, a, b) != GSL_SUCCESS) {
    gsl_root_fsolver_free(solver);
    throw NumericsError("admissibility",
                        "position bracket does not isolate a root of R(z) = Pe");
  }
  double root = 0.5 * (a + b);
  int status = GSL_CONTINUE;
  for (int iter = 0; iter < 200 && status == GSL_CONTINUE; ++iter) {
    if (gsl_root_fsolver_iterate(solver) != GSL_SUCCESS) break;
    root = gsl_root_fsolver_root(solver);
    status = gsl_root_test_interval(gsl_root_fsolver_x_lower(solver),
                                    gsl_root_fsolver_x_upper(solver), 1e-14, 1e-13);
  }
  gsl_root_fsolver_free(solver);
  if (status != GSL_SUCCESS)
    throw NumericsError("admissibility", "position root search did not converge");
  return root;
}

PositionResult make_result(const PositionProblem& prob, double root) {
  PositionResult res;
  res.xi_star = root;
  const double total = integral(*prob.theta, 0.0, prob.length);
  res.band_lower = (1.0 - prob.kdot) * total;
  res.band_upper = total;
  res.theta_at_root = (*prob.theta)(root);
  const double lo = std::min(res.band_lower, res.band_upper);
  const double hi = std::max(res.band_lower, res.band_upper);
  res.admissible = prob.pe_bar > lo && prob.pe_bar < hi;
  return res;
}

}  // namespace

double integral(const Profile& f, double a, double b) { return integrate(f, a, b, false); }

double criterion_R(const PositionProblem& prob, double z) {
  return integral(*prob.theta, 0.0, prob.length) - prob.kdot * integral(*prob.theta, 0.0, z);
}

double exit_weight(const gas::GasModel& g, const gas::NormalState& plus) {
  const double M2 = plus.q * plus.q / g.sound_speed2(plus.p, plus.rho);
  return 2.0 * (1.0 - M2) / (plus.rho * plus.rho * std::pow(plus.q, 3));
}

double exit_pressure_functional(const gas::GasModel& g, const gas::NormalState& plus,
                                const Profile& pe) {
  return exit_weight(g, plus) * integrate(pe, 0.0, 1.0, true);
}

std::pair<double, double> band(const PositionProblem& prob) {
  const double total = integral(*prob.theta, 0.0, prob.length);
  return {(1.0 - prob.kdot) * total, total};
}

PositionResult solve_shock_position(const PositionProblem& prob) {
  if (prob.theta == nullptr)
    throw ConfigError("admissibility", "position problem has no deflection profile");
  if (!(prob.kdot > 0.0))
    throw PhysicsError("admissibility", "front sensitivity kdot must be positive");
  const auto [r_end, r_begin] = band(prob);
  const double lo = std::min(r_end, r_begin);
  const double hi = std::max(r_end, r_begin);
  if (!(prob.pe_bar > lo && prob.pe_bar < hi))
    throw PhysicsError("admissibility",
                       "exit pressure " + std::to_string(prob.pe_bar) +
                           " outside the reachable band (" + std::to_string(r_end) +
                           ", " + std::to_string(r_begin) + ")");
  return make_result(prob, brent(prob, 0.0, prob.length));
}

PositionResult solve_in_bracket(const PositionProblem& prob, double a, double b) {
  if (!(a >= 0.0 && b <= prob.length && a < b))
    throw ConfigError("admissibility", "position bracket must satisfy 0 <= a < b <= L");
  return make_result(prob, brent(prob, a, b));
}

std::vector<PositionResult> solve_multi(const PositionProblem& prob,
                                        const std::vector<std::pair<double, double>>& brackets) {
  std::vector<PositionResult> out;
  out.reserve(brackets.size());
  for (const auto& [a, b] : brackets) out.push_back(solve_in_bracket(prob, a, b));
  return out;
}

}  // namespace nozzle::adm
