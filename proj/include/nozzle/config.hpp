#ifndef NOZZLE_CONFIG_HPP_
#define NOZZLE_CONFIG_HPP_

#include <string>

#include "json.hpp"

#include "nozzle/gas.hpp"
#include "nozzle/iteration.hpp"

namespace nozzle::config {

// A validated problem description, ready for the solver.  The solver always
// works in normalized variables (upstream mass flux rho q = 2); `normalization`
// maps solver values back to the units of the input file.
struct Loaded {
  iteration::Params params;
  gas::Normalization normalization;
  gas::NormalState upstream_raw;  // upstream state as given in the file
  double mass_flux_raw = 0.0;     // rho q of the raw upstream state
  bool normalized = true;

  // admissibility snapshot, computed at load time (cheap, no PDE work):
  double kdot = 0.0;
  double pe_bar = 0.0;
  double band_lower = 0.0;  // (1 - kdot) int_0^L Theta
  double band_upper = 0.0;  // int_0^L Theta
  bool admissible = false;  // pe_bar strictly inside the band
};

// Load and validate a JSON problem file.  Validation failures throw
// ConfigError (bad shape, violated data hypotheses) or PhysicsError (subsonic
// upstream state).  An exit pressure outside the reachable band is NOT an
// error here: the file loads with admissible = false and the caller decides.
//
// With normalize = false the file must already satisfy |rho q - 2| < 1e-8.
Loaded load(const std::string& path, bool normalize = true);

// Same, from an in-memory JSON document (used by the tests).
Loaded from_json(const nlohmann::json& doc, bool normalize = true);

}  // namespace nozzle::config

#endif  // NOZZLE_CONFIG_HPP_
