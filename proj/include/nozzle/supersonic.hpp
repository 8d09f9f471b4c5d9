#ifndef NOZZLE_SUPERSONIC_HPP_
#define NOZZLE_SUPERSONIC_HPP_

#include <array>
#include <vector>

#include "nozzle/gas.hpp"
#include "nozzle/grid.hpp"
#include "nozzle/profile.hpp"

namespace nozzle::supersonic {

// The region ahead of the front is governed, for uniform inlet data, by the
// (theta, p) characteristic subsystem alone: Bernoulli constant and entropy
// are exact invariants there, so q = sqrt(2(B - i(p, s))) pointwise.
//
// Both modes march the same predictor-corrector characteristic scheme with
// the same step count (the step is fixed by the *background* characteristic
// slope, independent of sigma), so the nonlinear and linearized solutions
// subtract cleanly when measuring the quadratic remainder.
//   nonlinear: fields are the full flow state.
//   linear:    fields are the first-order perturbations driven by the wall
//              slope, around the uniform background; coefficients frozen.
enum class Mode { linear, nonlinear };

struct Options {
  int ny = 129;                  // cross-stream nodes on [0,1]
  double length = 1.0;           // march from xi = 0 to xi = length
  double sigma = 0.0;            // wall turning amplitude
  const Profile* wall = nullptr; // turning profile Theta(xi); needed if sigma != 0
  double cfl = 0.9;              // fraction of the background characteristic step
  Mode mode = Mode::nonlinear;
};

struct Solution {
  Grid grid;                   // x = xi in [0, L], y = eta in [0, 1]
  Field theta, p, q, s;        // see Mode for the semantics
  Mode mode = Mode::nonlinear;
  gas::NormalState upstream;   // uniform background ahead of the front
  double bernoulli = 0.0;      // invariant B of the background
  double entropy = 0.0;        // invariant s of the background
};

// Marches the duct flow from the uniform inlet column at xi = 0.  Throws
// PhysicsError for subsonic upstream data and NumericsError if the marched
// flow loses supersonicity (the hyperbolic scheme is then meaningless).
Solution march(const gas::GasModel& g, const gas::NormalState& upstream,
               const Options& opt);

// Cross-section of the four fields at fixed xi (cubic interpolation per row).
std::array<std::vector<double>, 4> section_at(const Solution& sol, double xi);

// Field values along a curve xi = xi_of_row[j]; one state per grid row.
std::vector<gas::FlowState> sample_on_curve(const Solution& sol,
                                            const std::vector<double>& xi_of_row);

}  // namespace nozzle::supersonic

#endif  // NOZZLE_SUPERSONIC_HPP_
