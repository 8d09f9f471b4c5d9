#include "nozzle/grid.hpp"

#include <algorithm>
#include <cmath>

#include "nozzle/errors.hpp"

namespace nozzle {

std::vector<double> Field::row(int j) const {
  std::vector<double> out(g_.nx);
  for (int i = 0; i < g_.nx; ++i) out[i] = (*this)(i, j);
  return out;
}

std::vector<double> Field::column(int i) const {
  std::vector<double> out(g_.ny);
  for (int j = 0; j < g_.ny; ++j) out[j] = (*this)(i, j);
  return out;
}

Field ddx(const Field& f) {
  const Grid& g = f.grid();
  Field d(g);
  const double h = g.hx();
  for (int j = 0; j < g.ny; ++j) {
    d(0, j) = (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) / (2.0 * h);
    for (int i = 1; i < g.nx - 1; ++i)
      d(i, j) = (f(i + 1, j) - f(i - 1, j)) / (2.0 * h);
    d(g.nx - 1, j) =
        (3.0 * f(g.nx - 1, j) - 4.0 * f(g.nx - 2, j) + f(g.nx - 3, j)) / (2.0 * h);
  }
  return d;
}

Field ddy(const Field& f) {
  const Grid& g = f.grid();
  Field d(g);
  const double h = g.hy();
  for (int i = 0; i < g.nx; ++i) {
    d(i, 0) = (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) / (2.0 * h);
    for (int j = 1; j < g.ny - 1; ++j)
      d(i, j) = (f(i, j + 1) - f(i, j - 1)) / (2.0 * h);
    d(i, g.ny - 1) =
        (3.0 * f(i, g.ny - 1) - 4.0 * f(i, g.ny - 2) + f(i, g.ny - 3)) / (2.0 * h);
  }
  return d;
}

double trapezoid(const std::vector<double>& f, double h) {
  if (f.size() < 2) return 0.0;
  double sum = 0.5 * (f.front() + f.back());
  for (size_t k = 1; k + 1 < f.size(); ++k) sum += f[k];
  return sum * h;
}

double integrate(const Field& f) {
  const Grid& g = f.grid();
  std::vector<double> rows(g.nx);
  for (int i = 0; i < g.nx; ++i) rows[i] = trapezoid(f.column(i), g.hy());
  return trapezoid(rows, g.hx());
}

namespace {

// Stencil base: the four points m..m+3 bracketing x between m+1 and m+2,
// clamped near the ends; t is the local coordinate with nodes at 0,1,2,3.
int cubic_stencil(const std::vector<double>& f, double x0, double h, double x, double& t) {
  const int n = static_cast<int>(f.size());
  if (n < 4)
    throw NumericsError("interp_cubic", "need at least four samples");
  const double u = (x - x0) / h;
  int m = static_cast<int>(std::floor(u)) - 1;
  m = std::clamp(m, 0, n - 4);
  t = u - m;
  return m;
}

}  // namespace

double interp_cubic(const std::vector<double>& f, double x0, double h, double x) {
  double t = 0.0;
  const int m = cubic_stencil(f, x0, h, x, t);
  const double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  const double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  const double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  const double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  return w0 * f[m] + w1 * f[m + 1] + w2 * f[m + 2] + w3 * f[m + 3];
}

double interp_cubic_d1(const std::vector<double>& f, double x0, double h, double x) {
  double t = 0.0;
  const int m = cubic_stencil(f, x0, h, x, t);
  // d/dt of the Lagrange weights: sum over products of two root factors.
  const auto dw = [t](double a, double b, double c) {
    return (t - b) * (t - c) + (t - a) * (t - c) + (t - a) * (t - b);
  };
  const double w0 = -dw(1.0, 2.0, 3.0) / 6.0;
  const double w1 = dw(0.0, 2.0, 3.0) / 2.0;
  const double w2 = -dw(0.0, 1.0, 3.0) / 2.0;
  const double w3 = dw(0.0, 1.0, 2.0) / 6.0;
  return (w0 * f[m] + w1 * f[m + 1] + w2 * f[m + 2] + w3 * f[m + 3]) / h;
}

double interp_cubic_d2(const std::vector<double>& f, double x0, double h, double x) {
  double t = 0.0;
  const int m = cubic_stencil(f, x0, h, x, t);
  const auto ddw = [t](double a, double b, double c) {
    return 2.0 * ((t - a) + (t - b) + (t - c));
  };
  const double w0 = -ddw(1.0, 2.0, 3.0) / 6.0;
  const double w1 = ddw(0.0, 2.0, 3.0) / 2.0;
  const double w2 = -ddw(0.0, 1.0, 3.0) / 2.0;
  const double w3 = ddw(0.0, 1.0, 2.0) / 6.0;
  return (w0 * f[m] + w1 * f[m + 1] + w2 * f[m + 2] + w3 * f[m + 3]) / (h * h);
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sup_norm(const Field& f) { return sup_norm(f.data()); }

double l2_norm(const Field& f) {
  double s = 0.0;
  for (double x : f.data()) s += x * x;
  return std::sqrt(s * f.grid().hx() * f.grid().hy());
}

}  // namespace nozzle
