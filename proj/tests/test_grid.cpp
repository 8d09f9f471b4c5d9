#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "nozzle/grid.hpp"

using namespace nozzle;

namespace {

Field sample(const Grid& g, double (*f)(double, double)) {
  Field out(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) out(i, j) = f(g.x(i), g.y(j));
  return out;
}

}  // namespace

TEST_CASE("grid geometry and field indexing") {
  const Grid g{5, 4, 1.0, 3.0, 0.0, 1.0};
  CHECK(g.hx() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.hy() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(g.x(4) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(g.y(3) == doctest::Approx(1.0).epsilon(1e-15));

  Field f(g);
  f(2, 1) = 7.0;
  CHECK(f.data()[2 * g.ny + 1] == 7.0);
  CHECK(f.row(1)[2] == 7.0);
  CHECK(f.column(2)[1] == 7.0);
  CHECK(f.row(1).size() == static_cast<size_t>(g.nx));
  CHECK(f.column(2).size() == static_cast<size_t>(g.ny));
}

TEST_CASE("difference stencils are exact on quadratics") {
  // central interior and one-sided 3-point edges are all degree-2 exact
  const Grid g{9, 7, 0.0, 2.0, 0.0, 1.0};
  const Field f = sample(g, [](double x, double y) {
    return 1.0 + 2.0 * x + 3.0 * x * x - y + 0.5 * y * y + 0.25 * x * y;
  });
  const Field fx = ddx(f), fy = ddy(f);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      CHECK(fx(i, j) == doctest::Approx(2.0 + 6.0 * g.x(i) + 0.25 * g.y(j)).epsilon(1e-12));
      CHECK(fy(i, j) == doctest::Approx(-1.0 + g.y(j) + 0.25 * g.x(i)).epsilon(1e-12));
    }
  }
}

TEST_CASE("difference stencils converge at second order on smooth data") {
  auto err = [](int n) {
    const Grid g{n, n, 0.0, 1.0, 0.0, 1.0};
    const Field f = sample(g, [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y); });
    const Field fx = ddx(f);
    double worst = 0.0;
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j)
        worst = std::max(worst,
                         std::abs(fx(i, j) - 3 * std::cos(3 * g.x(i)) * std::cos(2 * g.y(j))));
    return worst;
  };
  const double e1 = err(33), e2 = err(65);
  CHECK(std::log2(e1 / e2) > 1.9);
}

TEST_CASE("trapezoid and field integration") {
  // exact for piecewise-linear integrands
  std::vector<double> lin = {0.0, 0.5, 1.0, 1.5, 2.0};
  CHECK(trapezoid(lin, 0.25) == doctest::Approx(1.0).epsilon(1e-15));

  const Grid g{41, 33, 0.0, 2.0, 0.0, 1.0};
  const Field f = sample(g, [](double x, double y) { return x + 3.0 * y; });
  CHECK(integrate(f) == doctest::Approx(2.0 + 3.0 * 0.5 * 2.0).epsilon(1e-13));

  // second order on smooth integrands
  auto ierr = [](int n) {
    const Grid g2{n, n, 0.0, 1.0, 0.0, 1.0};
    const Field s = sample(g2, [](double x, double y) { return std::exp(x) * std::sin(y); });
    const double exact = (std::exp(1.0) - 1.0) * (1.0 - std::cos(1.0));
    return std::abs(integrate(s) - exact);
  };
  CHECK(std::log2(ierr(17) / ierr(33)) > 1.9);
}

TEST_CASE("cubic interpolation reproduces cubics everywhere") {
  const double x0 = 0.3, h = 0.17;
  const int n = 11;
  auto poly = [](double x) { return 1.0 - 2.0 * x + 0.5 * x * x + 0.25 * x * x * x; };
  std::vector<double> f(n);
  for (int k = 0; k < n; ++k) f[k] = poly(x0 + k * h);

  for (double t = 0.0; t <= 1.0; t += 0.01) {
    const double x = x0 + t * (n - 1) * h;
    CHECK(interp_cubic(f, x0, h, x) == doctest::Approx(poly(x)).epsilon(1e-12));
  }
  // at the nodes the interpolant matches the samples to round-off
  for (int k = 0; k < n; ++k) {
    CHECK(interp_cubic(f, x0, h, x0 + k * h) == doctest::Approx(f[k]).epsilon(1e-14));
  }

  // analytic stencil derivatives are exact for cubics too, endpoints included
  auto dpoly = [](double x) { return -2.0 + x + 0.75 * x * x; };
  auto ddpoly = [](double x) { return 1.0 + 1.5 * x; };
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    const double x = x0 + t * (n - 1) * h;
    CHECK(interp_cubic_d1(f, x0, h, x) == doctest::Approx(dpoly(x)).epsilon(1e-11));
    CHECK(interp_cubic_d2(f, x0, h, x) == doctest::Approx(ddpoly(x)).epsilon(1e-10));
  }
}

TEST_CASE("norms") {
  std::vector<double> v = {1.0, -4.0, 2.5};
  CHECK(sup_norm(v) == 4.0);

  const Grid g{3, 3, 0.0, 1.0, 0.0, 1.0};
  Field f(g, 2.0);
  f(1, 1) = -5.0;
  CHECK(sup_norm(f) == 5.0);
  // l2: sqrt(hx hy sum f^2) with hx = hy = 1/2
  const double expect = std::sqrt(0.25 * (8 * 4.0 + 25.0));
  CHECK(l2_norm(f) == doctest::Approx(expect).epsilon(1e-15));
}
