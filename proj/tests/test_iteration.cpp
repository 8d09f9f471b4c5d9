#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nozzle/errors.hpp"
#include "nozzle/iteration.hpp"

using namespace nozzle;

namespace {

// Mach-2 duct with the cubic wall and a quadratic exit-pressure profile;
// the front-position quartic then has the closed-form root
// xi* = (4 (1/4 - pe_bar)/kdot)^(1/4).
iteration::Params cubic_duct(double sigma, int ny) {
  iteration::Params P;
  P.gas = gas::GasModel{1.4};
  gas::NormalState raw{1.0, 1.0, 0.0};
  raw.q = 2.0 * P.gas.sound_speed(raw.p, raw.rho);
  P.upstream = gas::Normalization::from_mass_flux(P.gas, raw.rho * raw.q).apply(raw);
  P.sigma = sigma;
  P.theta = Profile::polynomial({0.0, 0.0, 0.0, 1.0});
  P.pe = Profile::polynomial({1.0, 0.0, 0.2});
  P.length = 1.0;
  P.ny = ny;
  return P;
}

double field_gap(const iteration::Iterate& a, const iteration::Iterate& b) {
  double worst = 0.0;
  const auto sup_over = [&](const Field& u, const Field& v) {
    for (int i = 0; i < u.nx(); ++i)
      for (int j = 0; j < u.ny(); ++j) worst = std::max(worst, std::abs(u(i, j) - v(i, j)));
  };
  sup_over(a.dtheta, b.dtheta);
  sup_over(a.dp, b.dp);
  sup_over(a.dq, b.dq);
  sup_over(a.ds, b.ds);
  return worst;
}

}  // namespace

TEST_CASE("front position agrees with the closed-form quartic root") {
  iteration::Driver d(cubic_duct(0.01, 33));
  const double expect = std::pow(4.0 * (0.25 - d.pe_bar()) / d.linearization().kdot, 0.25);
  CHECK(d.position().xi_star == doctest::Approx(expect).epsilon(1e-11));
  CHECK(d.position().band_upper == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("vanishing wall amplitude reproduces the background in one sweep") {
  iteration::Driver d(cubic_duct(0.0, 33));
  iteration::Iterate st;
  const auto rep = d.run(st);

  CHECK(rep.converged);
  CHECK(rep.sigma_degenerate);
  CHECK(rep.iterations == 1);
  CHECK(st.dxi_star == 0.0);
  CHECK(st.dpsi_prime[0] == 0.0);

  iteration::Iterate zero{Field(d.downstream_grid()), Field(d.downstream_grid()),
                          Field(d.downstream_grid()), Field(d.downstream_grid()),
                          std::vector<double>(33, 0.0), 0.0};
  CHECK(field_gap(st, zero) < 1e-12);
  for (double r : rep.front_residual_sup) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("cubic duct, small amplitude: contraction, residuals, exact axis zeros") {
  iteration::Driver d(cubic_duct(0.01, 65));
  iteration::Iterate st;
  const auto rep = d.run(st);

  CHECK(rep.converged);
  CHECK(rep.iterations <= 20);
  REQUIRE(!rep.contraction.empty());
  for (double ratio : rep.contraction) CHECK(ratio <= 0.5);

  // the converged iterate satisfies the full nonlinear jump relations
  for (double r : rep.front_residual_sup) CHECK(std::abs(r) < 1e-10);

  // structural exactness: the axis stays a straight streamline and the
  // front slope vanishes there, bit-for-bit
  CHECK(st.dpsi_prime[0] == 0.0);
  for (int i = 0; i < d.downstream_grid().nx; ++i) {
    CHECK(st.dtheta(i, 0) == 0.0);
    CHECK(d.downstream_state(st, i, 0).theta == 0.0);
  }

  // front shift is first order in the amplitude with an O(1) constant
  const double c_s = std::abs(rep.xi_star - rep.xi_star_dot) / 0.01;
  CHECK(c_s > 0.1);
  CHECK(c_s < 3.0);
}

TEST_CASE("initial approximation is already accurate to the quadratic remainder") {
  const double sigma = 0.01;
  iteration::Driver d(cubic_duct(sigma, 65));
  const auto init = d.initial_approximation();
  iteration::Iterate st;
  d.run(st);

  // fields: O(sigma^2) gap between the linearized and converged solutions
  CHECK(field_gap(init, st) < 5.0 * sigma * sigma);
  // nonlinear jump residuals of the linear iterate are quadratically small
  for (double r : d.front_residual_sup(init)) CHECK(std::abs(r) < sigma * sigma);
}

TEST_CASE("front-shift constant is stable under halving the amplitude") {
  auto shift_per_sigma = [](double sigma) {
    iteration::Driver d(cubic_duct(sigma, 65));
    iteration::Iterate st;
    const auto rep = d.run(st);
    return std::abs(rep.xi_star - rep.xi_star_dot) / sigma;
  };
  const double c1 = shift_per_sigma(0.01), c2 = shift_per_sigma(0.005);
  CHECK(c1 / c2 > 0.8);
  CHECK(c1 / c2 < 1.25);
}

TEST_CASE("sections conserve the mass flux and meet the displaced wall") {
  const double sigma = 0.01;
  iteration::Driver d(cubic_duct(sigma, 65));
  iteration::Iterate st;
  d.run(st);

  for (double z : {0.2, 0.5, 0.7, 0.9}) {
    CAPTURE(z);
    const auto sec = d.section_at_z(st, z);
    double acc = 0.0;
    for (std::size_t j = 1; j < sec.r.size(); ++j) {
      const auto g = [&](std::size_t k) {
        return sec.r[k] * sec.rho[k] * sec.q[k] * std::cos(sec.theta[k]);
      };
      acc += 0.5 * (sec.r[j] - sec.r[j - 1]) * (g(j) + g(j - 1));
    }
    // normalized duct: unit flux integral through every section
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-5));
    // wall streamline lands on the perturbed wall radius 1 + sigma*int Theta
    const double phi = sigma * std::pow(z, 4) / 4.0;
    CHECK(sec.r.back() == doctest::Approx(1.0 + phi).epsilon(1e-5));
  }
}

TEST_CASE("iteration cap is enforced") {
  auto P = cubic_duct(0.01, 33);
  P.max_iter = 1;  // cannot converge in a single sweep at this amplitude
  iteration::Driver d(P);
  iteration::Iterate st;
  CHECK_THROWS_AS(d.run(st), NumericsError);
}

TEST_CASE("a wall profile that is flat at the root position is refused") {
  auto P = cubic_duct(0.01, 33);
  // Theta(z) = z^3 (z - 0.6)^2 vanishes quadratically at z = 0.6
  P.theta = Profile::polynomial({0.0, 0.0, 0.0, 0.36, -1.2, 1.0});
  // pick the exit level that parks the root exactly on the flat spot
  const auto plus = gas::normal_shock_downstream(P.gas, P.upstream);
  const auto lin = rh::linearized_coefficients(P.gas, P.upstream, plus);
  adm::PositionProblem prob;
  prob.theta = &P.theta;
  prob.length = P.length;
  prob.kdot = lin.kdot;
  const double target = adm::criterion_R(prob, 0.6);
  P.pe = Profile::polynomial({2.0 * target / adm::exit_weight(P.gas, plus)});
  CHECK_THROWS_AS(iteration::Driver{P}, PhysicsError);
}

TEST_CASE("caller-supplied position bracket is honored") {
  auto P = cubic_duct(0.01, 33);
  P.position_bracket = std::make_pair(0.5, 0.8);
  iteration::Driver d(P);
  const double expect = std::pow(4.0 * (0.25 - d.pe_bar()) / d.linearization().kdot, 0.25);
  CHECK(d.position().xi_star == doctest::Approx(expect).epsilon(1e-10));
}
