#ifndef NOZZLE_ITERATION_HPP_
#define NOZZLE_ITERATION_HPP_

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "nozzle/admissibility.hpp"
#include "nozzle/elliptic.hpp"
#include "nozzle/gas.hpp"
#include "nozzle/grid.hpp"
#include "nozzle/lagrange.hpp"
#include "nozzle/profile.hpp"
#include "nozzle/rankine_hugoniot.hpp"
#include "nozzle/supersonic.hpp"

namespace nozzle::iteration {

// Problem data for the full transonic duct solve, in normalized variables
// (upstream background mass flux rho q = 2, wall streamline at eta = 1).
struct Params {
  gas::GasModel gas;
  gas::NormalState upstream;  // uniform supersonic inlet state
  double sigma = 0.01;        // wall perturbation amplitude
  Profile theta;              // wall turning profile Theta on [0, length]
  Profile pe;                 // exit pressure perturbation profile on [0, 1]
  double length = 1.0;
  int ny = 129;       // cross-stream nodes
  int nx_sub = 0;     // streamwise nodes behind the front; 0 = same as ny
  double tol = 0.0;   // fixed-point increment tolerance; 0 = max(1e-10, 1e-4 sigma^2)
  int max_iter = 50;
  double cfl = 0.9;
  double theta_degeneracy = 1e-8;  // relative floor for |Theta(xi*)|
  std::optional<std::pair<double, double>> position_bracket;  // optional root bracket
};

// One iterate of the free-boundary scheme: perturbation fields on the fixed
// computational grid [xi*, L] x [0, 1] behind the front, the front slope
// profile, and the front position shift (front at wall = xi* + dxi_star).
struct Iterate {
  Field dtheta, dp, dq, ds;
  std::vector<double> dpsi_prime;
  double dxi_star = 0.0;
};

struct Report {
  bool converged = false;
  bool sigma_degenerate = false;  // sigma = 0: background is the exact solution
  int iterations = 0;
  std::vector<double> increment_sup;  // per-iteration update norms
  std::vector<double> increment_l2;
  std::vector<double> contraction;    // successive sup-increment ratios
  std::array<double, 4> front_residual_sup{};  // nonlinear jump residuals at the front
  double xi_star_dot = 0.0;  // solvability root of the linear theory
  double dxi_star = 0.0;     // converged front shift
  double xi_star = 0.0;      // converged front position at the wall
};

// Cross-section of the flow at a fixed physical station z: one entry per
// streamline node, each taken from whichever side of the front the point
// (z, eta_j) lies on, with the physical radius from the columnwise map.
struct PhysicalSection {
  double z = 0.0;
  std::vector<double> r, theta, p, q, s, rho, mach;
};

class Driver {
 public:
  explicit Driver(Params params);

  const Params& params() const { return params_; }
  const adm::PositionResult& position() const { return position_; }
  const rh::LinearizedJump& linearization() const { return lin_; }
  const gas::NormalState& bar_minus() const { return params_.upstream; }
  const gas::NormalState& bar_plus() const { return bar_plus_; }
  const supersonic::Solution& upstream() const { return upstream_; }
  const supersonic::Solution& upstream_linear() const { return upstream_linear_; }
  const Grid& downstream_grid() const { return sub_grid_; }
  double pe_bar() const { return pe_bar_; }

  // First approximation from the linear theory: linearized duct flow, front
  // from the solvability root, one elliptic solve with the linear front
  // traces, transport recovery, and the linear slope relation.
  Iterate initial_approximation() const;

  // One pass of the contraction map: front-position update (secant on the
  // solvability defect), elliptic solve for the new (pressure, angle) pair,
  // transport recovery of (speed, entropy), then the front-slope update.
  Iterate iterate_once(const Iterate& old) const;

  // Full fixed-point loop starting from the initial approximation.  The
  // converged iterate is returned through `state`.  Throws NumericsError on
  // divergence or when max_iter is exhausted.
  Report run(Iterate& state) const;

  // Reconstruction helpers.
  lagrange::ShockFitting front_of(const Iterate& it) const;
  gas::FlowState downstream_state(const Iterate& it, int i, int j) const;
  std::array<double, 4> front_residual_sup(const Iterate& it) const;
  PhysicalSection section_at_z(const Iterate& it, double z) const;

 private:
  struct FrontData {
    lagrange::ShockFitting front;
    std::vector<gas::FlowState> minus_trace;          // upstream state on the front
    std::vector<std::array<double, 4>> g_nonlinear;   // raw jump functionals
    std::vector<double> g1, g2, g3, g4;               // corrected front traces
    std::vector<double> bern;                         // q+ g2 + g1/rho+ + T+ g3
  };
  struct Sources {
    Field f1, f2, f3;  // f3 is the pointwise Bernoulli correction
  };
  struct BoundaryData {
    std::vector<double> h1, h3, h4;
  };

  FrontData assemble_front(const Iterate& old, double dxi_star) const;
  Sources assemble_sources(const Iterate& old, const lagrange::ShockFitting& front) const;
  BoundaryData assemble_boundary(const Iterate& old, const FrontData& fd) const;
  double data_defect(const Iterate& old, double dxi_star) const;
  double solve_position(const Iterate& old) const;

  Params params_;
  gas::NormalState bar_plus_;
  gas::FlowState bar_plus_state_;
  rh::LinearizedJump lin_;
  double pe_bar_ = 0.0;
  adm::PositionResult position_;
  supersonic::Solution upstream_, upstream_linear_;
  Grid sub_grid_;
  std::vector<double> eta_;
  std::optional<elliptic::Solver> esolver_;
  double T_plus_ = 0.0, B_plus_ = 0.0, s_plus_ = 0.0;
  double elliptic_A_ = 0.0, elliptic_B_ = 0.0;
  double tol_ = 0.0;
};

}  // namespace nozzle::iteration

#endif  // NOZZLE_ITERATION_HPP_
