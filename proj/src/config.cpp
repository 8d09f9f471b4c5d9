#include "nozzle/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nozzle/admissibility.hpp"
#include "nozzle/errors.hpp"
#include "nozzle/rankine_hugoniot.hpp"

namespace nozzle::config {
namespace {

using nlohmann::json;

// Flatness threshold for the wall profile at the inlet corner and the
// tolerance on |rho q - 2| when normalization is disabled.
constexpr double kHypothesisTol = 1e-10;
constexpr double kMassFluxTol = 1e-8;

double require_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ConfigError(where, "missing or non-numeric field '" + key + "'");
  }
  return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback,
                 const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    throw ConfigError(where, "field '" + key + "' must be a number");
  }
  return j[key].get<double>();
}

int integer_or(const json& j, const std::string& key, int fallback,
               const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) {
    throw ConfigError(where, "field '" + key + "' must be an integer");
  }
  return j[key].get<int>();
}

std::vector<double> number_array(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(where, "expected a non-empty array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(where, "expected a non-empty array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// A profile is given either as ascending polynomial coefficients or as a
// uniform sample table with cubic interpolation:
//   {"polynomial": [c0, c1, ...]}
//   {"table": {"x0": 0.0, "dx": 0.01, "values": [...]}}
Profile parse_profile(const json& j, const std::string& where) {
  if (!j.is_object()) {
    throw ConfigError(where, "expected an object with 'polynomial' or 'table'");
  }
  const bool has_poly = j.contains("polynomial");
  const bool has_table = j.contains("table");
  if (has_poly == has_table) {
    throw ConfigError(where, "give exactly one of 'polynomial' or 'table'");
  }
  if (has_poly) {
    return Profile::polynomial(number_array(j["polynomial"], where + ".polynomial"));
  }
  const json& t = j["table"];
  if (!t.is_object()) throw ConfigError(where + ".table", "expected an object");
  const double x0 = require_number(t, "x0", where + ".table");
  const double dx = require_number(t, "dx", where + ".table");
  if (!(dx > 0.0)) throw ConfigError(where + ".table", "'dx' must be positive");
  auto values = number_array(t.contains("values") ? t["values"] : json(), where + ".table.values");
  if (values.size() < 4) {
    throw ConfigError(where + ".table", "need at least four samples for cubic interpolation");
  }
  return Profile::table(x0, dx, std::move(values));
}

void check_wall_hypotheses(const Profile& theta, double length) {
  if (theta.is_zero()) {
    throw ConfigError("wall_theta",
                      "wall turning profile is identically zero; the duct is a plain "
                      "cylinder and the front position is indeterminate");
  }
  const double scale = std::max(1.0, theta.sup_abs(0.0, length));
  struct Check {
    double value;
    const char* name;
  } checks[] = {
      {theta(0.0), "Theta(0) = 0 (wall meets the inlet cylinder)"},
      {theta.derivative(0.0), "Theta'(0) = 0 (wall slope continuous at the inlet)"},
      {theta.second_derivative(0.0), "Theta''(0) = 0 (wall curvature continuous at the inlet)"},
  };
  for (const auto& c : checks) {
    if (std::abs(c.value) >= kHypothesisTol * scale) {
      std::ostringstream msg;
      msg << "wall turning profile violates the inlet hypothesis " << c.name
          << "; got " << c.value;
      throw ConfigError("wall_theta", msg.str());
    }
  }
}

}  // namespace

Loaded from_json(const json& doc, bool normalize) {
  if (!doc.is_object()) throw ConfigError("config", "top-level JSON value must be an object");

  Loaded out;
  iteration::Params& p = out.params;

  const json gas_j = doc.value("gas", json::object());
  p.gas.gamma = number_or(gas_j, "gamma", 1.4, "gas");
  p.gas.cv = number_or(gas_j, "cv", 1.0, "gas");
  p.gas.s0 = number_or(gas_j, "s0", 0.0, "gas");
  p.gas.validate();

  if (!doc.contains("upstream") || !doc["upstream"].is_object()) {
    throw ConfigError("upstream", "missing required object 'upstream'");
  }
  const json& up = doc["upstream"];
  gas::NormalState raw;
  raw.p = require_number(up, "pressure", "upstream");
  raw.rho = require_number(up, "density", "upstream");
  if (!(raw.p > 0.0) || !(raw.rho > 0.0)) {
    throw ConfigError("upstream", "'pressure' and 'density' must be positive");
  }
  const bool has_mach = up.contains("mach");
  const bool has_speed = up.contains("speed");
  if (has_mach == has_speed) {
    throw ConfigError("upstream", "give exactly one of 'mach' or 'speed'");
  }
  if (has_mach) {
    const double mach = require_number(up, "mach", "upstream");
    raw.q = mach * p.gas.sound_speed(raw.p, raw.rho);
  } else {
    raw.q = require_number(up, "speed", "upstream");
  }
  if (!(raw.q > 0.0)) throw ConfigError("upstream", "upstream speed must be positive");
  if (p.gas.mach(raw.q, raw.p, raw.rho) <= 1.0) {
    throw PhysicsError("upstream", "inlet flow must be supersonic for a compressive front");
  }
  out.upstream_raw = raw;
  out.mass_flux_raw = raw.rho * raw.q;

  p.sigma = number_or(doc, "sigma", 0.01, "config");
  if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma)) {
    throw ConfigError("config", "'sigma' must be a finite non-negative number");
  }
  p.length = number_or(doc, "length", 1.0, "config");
  if (!(p.length > 0.0)) throw ConfigError("config", "'length' must be positive");

  if (!doc.contains("wall_theta")) {
    throw ConfigError("config", "missing required profile 'wall_theta'");
  }
  p.theta = parse_profile(doc["wall_theta"], "wall_theta");
  check_wall_hypotheses(p.theta, p.length);

  if (!doc.contains("exit_pressure")) {
    throw ConfigError("config", "missing required profile 'exit_pressure'");
  }
  p.pe = parse_profile(doc["exit_pressure"], "exit_pressure");

  const json grid_j = doc.value("grid", json::object());
  p.ny = integer_or(grid_j, "ny", 129, "grid");
  p.nx_sub = integer_or(grid_j, "nx_sub", 0, "grid");
  if (p.ny < 5) throw ConfigError("grid", "'ny' must be at least 5");
  if (p.nx_sub != 0 && p.nx_sub < 5) {
    throw ConfigError("grid", "'nx_sub' must be 0 (same as ny) or at least 5");
  }

  const json solver_j = doc.value("solver", json::object());
  p.max_iter = integer_or(solver_j, "max_iter", 50, "solver");
  p.tol = number_or(solver_j, "tol", 0.0, "solver");
  p.cfl = number_or(solver_j, "cfl", 0.9, "solver");
  p.theta_degeneracy = number_or(solver_j, "theta_degeneracy", 1e-8, "solver");
  if (p.max_iter < 1) throw ConfigError("solver", "'max_iter' must be at least 1");
  if (!(p.tol >= 0.0)) throw ConfigError("solver", "'tol' must be non-negative");
  if (!(p.cfl > 0.0) || p.cfl > 1.0) throw ConfigError("solver", "'cfl' must lie in (0, 1]");
  if (!(p.theta_degeneracy > 0.0)) {
    throw ConfigError("solver", "'theta_degeneracy' must be positive");
  }
  if (solver_j.contains("position_bracket")) {
    auto br = number_array(solver_j["position_bracket"], "solver.position_bracket");
    if (br.size() != 2 || !(br[0] < br[1])) {
      throw ConfigError("solver", "'position_bracket' must be [a, b] with a < b");
    }
    p.position_bracket = std::make_pair(br[0], br[1]);
  }

  out.normalized = normalize;
  if (normalize) {
    out.normalization = gas::Normalization::from_mass_flux(p.gas, out.mass_flux_raw);
    p.upstream = out.normalization.apply(raw);
  } else {
    if (std::abs(out.mass_flux_raw - 2.0) >= kMassFluxTol) {
      std::ostringstream msg;
      msg << "normalization disabled but the upstream mass flux rho*q = "
          << out.mass_flux_raw << " differs from 2; rescale the inlet state or normalize";
      throw ConfigError("upstream", msg.str());
    }
    out.normalization = gas::Normalization::identity();
    p.upstream = raw;
  }

  // Admissibility snapshot: cheap closed forms, no PDE work.  An exit
  // pressure outside the reachable band is reported, not thrown.
  const gas::NormalState plus = gas::normal_shock_downstream(p.gas, p.upstream);
  const rh::LinearizedJump lin = rh::linearized_coefficients(p.gas, p.upstream, plus);
  out.kdot = lin.kdot;
  out.pe_bar = adm::exit_pressure_functional(p.gas, plus, p.pe);
  adm::PositionProblem prob;
  prob.theta = &p.theta;
  prob.length = p.length;
  prob.kdot = lin.kdot;
  prob.pe_bar = out.pe_bar;
  const auto [lo, hi] = adm::band(prob);
  out.band_lower = lo;
  out.band_upper = hi;
  const double lo_s = std::min(lo, hi), hi_s = std::max(lo, hi);
  out.admissible = (out.pe_bar > lo_s && out.pe_bar < hi_s);

  return out;
}

Loaded load(const std::string& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(path, std::string("JSON parse failure: ") + e.what());
  }
  try {
    return from_json(doc, normalize);
  } catch (const json::exception& e) {
    throw ConfigError(path, std::string("malformed config: ") + e.what());
  }
}

}  // namespace nozzle::config
