#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "nozzle/errors.hpp"
#include "nozzle/gas.hpp"

using namespace nozzle;

namespace {

// Independent oracle for the downstream state of a normal shock: solve the
// raw conservation laws directly, never touching the closed forms under test.
// With m = rho- q- and Pi = p- + m q- fixed by mass and momentum,
//   rho+ = m / q+,   p+ = Pi - m q+,
// and the Bernoulli residual F(q) = q^2/2 + gamma q (Pi - m q)/((gamma-1) m) - B
// is a quadratic whose roots are q- (trivial) and the shocked speed.  The
// nontrivial root is isolated by a sign-change scan strictly below q- and
// polished by bisection to machine precision.
gas::NormalState shock_oracle(const gas::GasModel& g, const gas::NormalState& minus) {
  const double m = minus.rho * minus.q;
  const double Pi = minus.p + m * minus.q;
  const double B = g.bernoulli(minus.q, minus.p, minus.rho);
  auto F = [&](double q) {
    return 0.5 * q * q + g.gamma * q * (Pi - m * q) / ((g.gamma - 1.0) * m) - B;
  };

  const double q_hi = minus.q * (1.0 - 1e-6);
  const double q_lo = 1e-3 * minus.q;
  const int scan = 20000;
  double a = q_lo, b = -1.0;
  double fa = F(a);
  for (int k = 1; k <= scan; ++k) {
    const double x = q_lo + (q_hi - q_lo) * k / scan;
    const double fx = F(x);
    if (fa == 0.0) {  // landed on the root exactly
      return {Pi - m * a, m / a, a};
    }
    if (fa * fx < 0.0) {
      b = x;
      break;
    }
    a = x;
    fa = fx;
  }
  REQUIRE(b > 0.0);  // a bracket must exist for supersonic inflow
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = F(mid);
    if (fm == 0.0) {
      a = b = mid;
      break;
    }
    (fa * fm < 0.0 ? b : a) = mid;
    if (fa * fm >= 0.0) fa = fm;
  }
  const double q = 0.5 * (a + b);
  return {Pi - m * q, m / q, q};
}

gas::NormalState state_from_mach(const gas::GasModel& g, double mach, double p, double rho) {
  return {p, rho, mach * g.sound_speed(p, rho)};
}

}  // namespace

TEST_CASE("one-point thermodynamic relations are mutually consistent") {
  gas::GasModel g{1.4, 2.0, 0.3};
  g.validate();

  const double rho = 0.83, s = 0.55;
  const double p = g.pressure(rho, s);
  CHECK(g.density(p, s) == doctest::Approx(rho).epsilon(1e-14));
  CHECK(g.entropy(p, rho) == doctest::Approx(s).epsilon(1e-14));
  CHECK(g.entropy_coefficient(g.s0) == doctest::Approx(g.gamma - 1.0).epsilon(1e-15));
  CHECK(g.sound_speed2(p, rho) == doctest::Approx(g.gamma * p / rho).epsilon(1e-15));

  const double q = 1.7;
  CHECK(g.bernoulli(q, p, rho) ==
        doctest::Approx(0.5 * q * q + g.enthalpy(p, rho)).epsilon(1e-15));
  CHECK(g.temperature(p, rho) ==
        doctest::Approx(p / ((g.gamma - 1.0) * g.cv * rho)).epsilon(1e-15));
  CHECK(g.mach(q, p, rho) == doctest::Approx(q / g.sound_speed(p, rho)).epsilon(1e-15));

  CHECK_THROWS_AS(gas::GasModel{0.9}.validate(), ConfigError);
  CHECK_THROWS_AS((gas::GasModel{1.4, -1.0}).validate(), ConfigError);
}

TEST_CASE("normal shock closed forms match the conservation-law oracle") {
  const double gammas[] = {1.2, 1.4, 5.0 / 3.0};
  const double machs[] = {1.2, 1.5, 2.0, 3.0, 5.0};
  for (double gamma : gammas) {
    for (double mach : machs) {
      CAPTURE(gamma);
      CAPTURE(mach);
      const gas::GasModel g{gamma};
      const auto minus = state_from_mach(g, mach, 1.1, 0.9);
      const auto plus = gas::normal_shock_downstream(g, minus);
      const auto ref = shock_oracle(g, minus);

      CHECK(plus.p == doctest::Approx(ref.p).epsilon(1e-10));
      CHECK(plus.rho == doctest::Approx(ref.rho).epsilon(1e-10));
      CHECK(plus.q == doctest::Approx(ref.q).epsilon(1e-10));

      // compressive jump, subsonic exit
      CHECK(plus.p > minus.p);
      CHECK(g.mach(plus.q, plus.p, plus.rho) < 1.0);
      // entropy must rise across the front
      CHECK(g.entropy(plus.p, plus.rho) > g.entropy(minus.p, minus.rho));

      // the product of the normal speeds is the critical speed squared
      const double cstar2 = gas::critical_speed2(g, minus);
      CHECK(plus.q * minus.q == doctest::Approx(cstar2).epsilon(1e-12));
      CHECK(gas::critical_speed2(g, plus) == doctest::Approx(cstar2).epsilon(1e-12));

      // raw conservation residuals of the closed-form pair
      const auto res = gas::rh_residual_normal(g, minus, plus);
      const double scale = minus.p + minus.rho * minus.q * minus.q;
      CHECK(std::abs(res[0]) < 1e-12 * scale);
      CHECK(std::abs(res[1]) < 1e-12 * scale);
      CHECK(std::abs(res[2]) < 1e-12 * scale);
      CHECK(res[3] > 0.0);
    }
  }
}

TEST_CASE("normal shock rejects sonic and subsonic inflow") {
  const gas::GasModel g;
  CHECK_THROWS_AS(gas::normal_shock_downstream(g, state_from_mach(g, 0.8, 1.0, 1.0)),
                  PhysicsError);
  CHECK_THROWS_AS(gas::normal_shock_downstream(g, state_from_mach(g, 1.0, 1.0, 1.0)),
                  PhysicsError);
}

TEST_CASE("mass-flux normalization fixes rho q = 2 and preserves p, M") {
  const gas::GasModel g{1.4};
  const auto raw = state_from_mach(g, 2.0, 1.0, 1.0);
  const double m = raw.rho * raw.q;
  const auto norm = gas::Normalization::from_mass_flux(g, m);

  CHECK(norm.a * norm.b * norm.b == doctest::Approx(1.0).epsilon(1e-15));

  const auto scaled = norm.apply(raw);
  CHECK(scaled.rho * scaled.q == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(scaled.p == raw.p);  // pressure untouched
  CHECK(g.mach(scaled.q, scaled.p, scaled.rho) ==
        doctest::Approx(g.mach(raw.q, raw.p, raw.rho)).epsilon(1e-14));

  const auto back = norm.unapply(scaled);
  CHECK(back.p == doctest::Approx(raw.p).epsilon(1e-15));
  CHECK(back.rho == doctest::Approx(raw.rho).epsilon(1e-15));
  CHECK(back.q == doctest::Approx(raw.q).epsilon(1e-15));

  // the entropy shift keeps p = A(s) rho^gamma consistent on both sides
  const double s_raw = g.entropy(raw.p, raw.rho);
  gas::FlowState st{0.1, raw.p, raw.q, s_raw};
  const auto st2 = norm.apply(g, st);
  CHECK(st2.theta == st.theta);
  CHECK(g.density(st2.p, st2.s) == doctest::Approx(norm.a * raw.rho).epsilon(1e-14));
  const auto st3 = norm.unapply(g, st2);
  CHECK(st3.q == doctest::Approx(st.q).epsilon(1e-15));
  CHECK(st3.s == doctest::Approx(st.s).epsilon(1e-14));
}

TEST_CASE("normalization commutes with the shock jump") {
  // normalizing upstream then jumping equals jumping then normalizing
  const gas::GasModel g{1.4};
  const auto raw = state_from_mach(g, 2.5, 0.8, 1.3);
  const auto norm = gas::Normalization::from_mass_flux(g, raw.rho * raw.q);

  const auto jump_then_scale = norm.apply(gas::normal_shock_downstream(g, raw));
  const auto scale_then_jump = gas::normal_shock_downstream(g, norm.apply(raw));
  CHECK(jump_then_scale.p == doctest::Approx(scale_then_jump.p).epsilon(1e-13));
  CHECK(jump_then_scale.rho == doctest::Approx(scale_then_jump.rho).epsilon(1e-13));
  CHECK(jump_then_scale.q == doctest::Approx(scale_then_jump.q).epsilon(1e-13));
}
