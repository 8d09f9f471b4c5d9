#ifndef NOZZLE_GRID_HPP_
#define NOZZLE_GRID_HPP_

#include <vector>

namespace nozzle {

// Uniform tensor-product grid on [x0,x1] x [y0,y1]; node (i,j) sits at
// (x0 + i hx, y0 + j hy).  The y direction is always the duct cross-section
// coordinate in [0,1] in this code base, x the streamwise coordinate.
struct Grid {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;

  double hx() const { return (x1 - x0) / (nx - 1); }
  double hy() const { return (y1 - y0) / (ny - 1); }
  double x(int i) const { return x0 + i * hx(); }
  double y(int j) const { return y0 + j * hy(); }
  bool same_shape(const Grid& o) const { return nx == o.nx && ny == o.ny; }
};

// Dense nodal scalar field over a Grid, stored row-major in the x index.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& g, double fill = 0.0)
      : g_(g), v_(static_cast<size_t>(g.nx) * g.ny, fill) {}

  double& operator()(int i, int j) { return v_[static_cast<size_t>(i) * g_.ny + j]; }
  double operator()(int i, int j) const { return v_[static_cast<size_t>(i) * g_.ny + j]; }

  const Grid& grid() const { return g_; }
  int nx() const { return g_.nx; }
  int ny() const { return g_.ny; }
  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

  std::vector<double> row(int j) const;     // values along x at fixed j
  std::vector<double> column(int i) const;  // values along y at fixed i

 private:
  Grid g_;
  std::vector<double> v_;
};

// Second-order partial derivatives: central differences inside, one-sided
// three-point stencils on the boundary.
Field ddx(const Field& f);
Field ddy(const Field& f);

// Trapezoid rule over uniformly spaced samples.
double trapezoid(const std::vector<double>& f, double h);

// Trapezoid rule in both directions over the whole rectangle.
double integrate(const Field& f);

// Cubic Lagrange interpolation on uniform samples (origin x0, spacing h).
// Four-point stencils, clamped near the ends; exact for cubic polynomials.
// The _d1/_d2 variants differentiate the same local interpolant analytically,
// so they inherit the exactness on cubics.
double interp_cubic(const std::vector<double>& f, double x0, double h, double x);
double interp_cubic_d1(const std::vector<double>& f, double x0, double h, double x);
double interp_cubic_d2(const std::vector<double>& f, double x0, double h, double x);

// Norms used by the iteration monitor.
double sup_norm(const std::vector<double>& v);
double sup_norm(const Field& f);
double l2_norm(const Field& f);  // grid-weighted: sqrt(hx hy sum f^2)

}  // namespace nozzle

#endif  // NOZZLE_GRID_HPP_
