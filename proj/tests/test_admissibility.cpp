#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "nozzle/admissibility.hpp"
#include "nozzle/errors.hpp"
#include "nozzle/gas.hpp"
#include "nozzle/rankine_hugoniot.hpp"

using namespace nozzle;

namespace {

// cubic wall profile: the matching criterion R(z) = (1/4) - kdot z^4/4 on a
// unit duct has the closed-form root z = (4 (1/4 - pe)/kdot)^(1/4)
adm::PositionProblem cubic_problem(const Profile& theta, double kdot, double pe) {
  adm::PositionProblem prob;
  prob.theta = &theta;
  prob.length = 1.0;
  prob.kdot = kdot;
  prob.pe_bar = pe;
  return prob;
}

}  // namespace

TEST_CASE("quadrature matches analytic integrals of polynomial and table profiles") {
  const auto poly = Profile::polynomial({0.0, 1.0, 0.0, 2.0});  // x + 2 x^3
  CHECK(adm::integral(poly, 0.0, 1.0) == doctest::Approx(0.5 + 0.5).epsilon(1e-13));
  CHECK(adm::integral(poly, 0.25, 0.75) ==
        doctest::Approx((0.75 * 0.75 - 0.25 * 0.25) / 2 +
                        (std::pow(0.75, 4) - std::pow(0.25, 4)) / 2)
            .epsilon(1e-13));

  // dense table of sin; integral over [0, 2] is 1 - cos 2
  const int n = 201;
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = std::sin(2.0 * k / (n - 1));
  const auto tab = Profile::table(0.0, 2.0 / (n - 1), v);
  CHECK(adm::integral(tab, 0.0, 2.0) == doctest::Approx(1.0 - std::cos(2.0)).epsilon(1e-8));
}

TEST_CASE("cubic duct: front position solves the quartic in closed form") {
  const auto theta = Profile::polynomial({0.0, 0.0, 0.0, 1.0});  // z^3
  const auto prob = cubic_problem(theta, 0.5, 0.21875);

  // R(z) = 1/4 - z^4/8; R = 0.21875 at z^4 = 1/4
  const auto res = adm::solve_shock_position(prob);
  CHECK(res.admissible);
  CHECK(res.xi_star == doctest::Approx(std::pow(0.25, 0.25)).epsilon(1e-10));
  CHECK(res.theta_at_root == doctest::Approx(std::pow(0.25, 0.75)).epsilon(1e-10));
  CHECK(res.band_upper == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(res.band_lower == doctest::Approx(0.125).epsilon(1e-13));

  // criterion values at the endpoints frame the band
  CHECK(adm::criterion_R(prob, 0.0) == doctest::Approx(res.band_upper).epsilon(1e-13));
  CHECK(adm::criterion_R(prob, 1.0) == doctest::Approx(res.band_lower).epsilon(1e-13));
}

TEST_CASE("out-of-band exit pressures are rejected with the band reported") {
  const auto theta = Profile::polynomial({0.0, 0.0, 0.0, 1.0});
  for (double pe : {0.26, 0.1, -1.0}) {
    const auto prob = cubic_problem(theta, 0.5, pe);
    CAPTURE(pe);
    try {
      adm::solve_shock_position(prob);
      FAIL("expected a physics rejection");
    } catch (const PhysicsError& e) {
      const std::string msg = e.what();
      // the message must state the reachable interval
      CHECK(msg.find("0.125") != std::string::npos);
      CHECK(msg.find("0.25") != std::string::npos);
    }
  }
}

TEST_CASE("band endpoints come from the closed-form endpoint values") {
  const auto theta = Profile::polynomial({0.0, 0.0, 0.0, 1.0, -0.5});
  const double I = adm::integral(theta, 0.0, 1.0);  // 1/4 - 1/10
  for (double kdot : {0.5, 1.8888888888888889}) {
    const auto prob = cubic_problem(theta, kdot, 0.0);
    const auto [lo, hi] = adm::band(prob);
    CHECK(hi == doctest::Approx(I).epsilon(1e-12));
    CHECK(lo == doctest::Approx((1.0 - kdot) * I).epsilon(1e-12));
  }
}

TEST_CASE("exit weight and weighted exit functional at the reference background") {
  const gas::GasModel g{1.4};
  gas::NormalState raw{1.0, 1.0, 0.0};
  raw.q = 2.0 * g.sound_speed(raw.p, raw.rho);
  const auto minus = gas::Normalization::from_mass_flux(g, raw.rho * raw.q).apply(raw);
  const auto plus = gas::normal_shock_downstream(g, minus);

  // 2 (1 - M+^2)/(rho+^2 q+^3) with M+^2 = 1/3, rho+^2 q+^3 = 4.2
  CHECK(adm::exit_weight(g, plus) == doctest::Approx(2.0 * (2.0 / 3.0) / 4.2).epsilon(1e-12));

  const auto pe = Profile::polynomial({1.0, 0.0, 0.2});  // 1 + 0.2 r^2
  // integral_0^1 t (1 + 0.2 t^2) dt = 0.55
  CHECK(adm::exit_pressure_functional(g, plus, pe) ==
        doctest::Approx(0.55 * 2.0 * (2.0 / 3.0) / 4.2).epsilon(1e-12));
}

TEST_CASE("full physical chain: Mach-2 duct with cubic wall") {
  // same chain the solver uses: gas -> shock -> kdot -> weighted exit value
  const gas::GasModel g{1.4};
  gas::NormalState raw{1.0, 1.0, 0.0};
  raw.q = 2.0 * g.sound_speed(raw.p, raw.rho);
  const auto minus = gas::Normalization::from_mass_flux(g, raw.rho * raw.q).apply(raw);
  const auto plus = gas::normal_shock_downstream(g, minus);
  const auto lin = rh::linearized_coefficients(g, minus, plus);

  const auto theta = Profile::polynomial({0.0, 0.0, 0.0, 1.0});
  const auto pe = Profile::polynomial({1.0, 0.0, 0.2});
  adm::PositionProblem prob;
  prob.theta = &theta;
  prob.length = 1.0;
  prob.kdot = lin.kdot;
  prob.pe_bar = adm::exit_pressure_functional(g, plus, pe);

  const auto res = adm::solve_shock_position(prob);
  // R(z) = 1/4 - kdot z^4/4 => z = (4(1/4 - pe)/kdot)^(1/4)
  const double expect = std::pow(4.0 * (0.25 - prob.pe_bar) / prob.kdot, 0.25);
  CHECK(res.xi_star == doctest::Approx(expect).epsilon(1e-11));
  CHECK(res.xi_star > 0.0);
  CHECK(res.xi_star < 1.0);
}

TEST_CASE("bracketed and multi-bracket solves") {
  const auto theta = Profile::polynomial({0.0, 0.0, 0.0, 1.0});
  const auto prob = cubic_problem(theta, 0.5, 0.21875);
  const double root = std::pow(0.25, 0.25);

  const auto res = adm::solve_in_bracket(prob, 0.5, 0.9);
  CHECK(res.xi_star == doctest::Approx(root).epsilon(1e-10));

  CHECK_THROWS_AS(adm::solve_in_bracket(prob, -0.5, 0.9), ConfigError);
  // a bracket that does not straddle the root cannot isolate it
  CHECK_THROWS_AS(adm::solve_in_bracket(prob, 0.0, 0.3), NumericsError);

  const auto multi = adm::solve_multi(prob, {{0.4, 0.8}});
  REQUIRE(multi.size() == 1);
  CHECK(multi[0].xi_star == doctest::Approx(root).epsilon(1e-10));
}

TEST_CASE("null or missing wall profile is rejected") {
  adm::PositionProblem prob;
  prob.length = 1.0;
  prob.kdot = 0.5;
  prob.pe_bar = 0.1;
  CHECK_THROWS_AS(adm::solve_shock_position(prob), ConfigError);

  const auto theta = Profile::polynomial({0.0, 0.0, 0.0, 1.0});
  prob.theta = &theta;
  prob.kdot = -1.0;  // the sensitivity coefficient is positive for real shocks
  CHECK_THROWS_AS(adm::solve_shock_position(prob), PhysicsError);
}
