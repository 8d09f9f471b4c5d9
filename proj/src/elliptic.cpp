#include "nozzle/elliptic.hpp"

#include <cmath>
#include <vector>

#include "nozzle/errors.hpp"

namespace nozzle::elliptic {

namespace {

// Second-order d/dy of uniformly spaced samples: central inside, one-sided
// three-point stencils at the ends.
std::vector<double> dvec(const std::vector<double>& f, double h) {
  const int n = static_cast<int>(f.size());
  std::vector<double> d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (int j = 1; j < n - 1; ++j) d[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return d;
}

}  // namespace

double solvability_defect(const Grid& grid, double B, const Field& ell2,
                          const std::vector<double>& h1, const std::vector<double>& h3,
                          const std::vector<double>& h4) {
  const int nx = grid.nx, ny = grid.ny;
  std::vector<double> col(ny), rowint(nx), side(ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) col[j] = grid.y(j) * ell2(i, j);
    rowint[i] = trapezoid(col, grid.hy());
  }
  for (int j = 0; j < ny; ++j) side[j] = grid.y(j) * (h1[j] - h3[j]);
  return trapezoid(rowint, grid.hx()) - trapezoid(h4, grid.hx()) -
         B * trapezoid(side, grid.hy());
}

Solver::Solver(const Grid& grid, double A, double B) : grid_(grid), A_(A), B_(B) {
  if (grid.nx < 5 || grid.ny < 5)
    throw ConfigError("elliptic", "grid must have at least 5 nodes per direction");
  if (!(A > 0.0 && B > 0.0))
    throw ConfigError("elliptic", "coefficients A, B must be positive (elliptic regime)");
  if (grid.y0 != 0.0 || grid.y1 != 1.0)
    throw ConfigError("elliptic", "cross-stream range must be [0,1]");

  s_ = std::sqrt(B / A);
  sab_ = std::sqrt(A * B);
  hx_ = grid.hx() / sab_;
  hy_ = grid.hy();
  const int nx = grid.nx, ny = grid.ny;

  y_.resize(ny);
  face_lo_.resize(ny);
  face_hi_.resize(ny);
  wlog_.assign(ny, 0.0);
  for (int j = 0; j < ny; ++j) {
    y_[j] = grid.y(j);
    face_lo_[j] = std::max(y_[j] - hy_ / 2.0, 0.0);
    face_hi_[j] = std::min(y_[j] + hy_ / 2.0, 1.0);
    if (j > 0) wlog_[j] = std::log(face_hi_[j] / face_lo_[j]);
  }

  const int n = nx * (ny - 2);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(n) * 5);
  for (int i = 0; i < nx; ++i) {
    for (int j = 1; j <= ny - 2; ++j) {
      const int k = unknown(i, j);
      const double dxw = (i > 0 && i < nx - 1) ? hx_ : hx_ / 2.0;
      if (i < nx - 1) {
        const double c = wlog_[j] / hx_;
        trip.emplace_back(k, k, c);
        trip.emplace_back(k, unknown(i + 1, j), -c);
      }
      if (i > 0) {
        const double c = wlog_[j] / hx_;
        trip.emplace_back(k, k, c);
        trip.emplace_back(k, unknown(i - 1, j), -c);
      }
      const double ct = dxw / (hy_ * (y_[j] + hy_ / 2.0));
      trip.emplace_back(k, k, ct);
      if (j + 1 <= ny - 2) trip.emplace_back(k, unknown(i, j + 1), -ct);
      const double cb = dxw / (hy_ * (y_[j] - hy_ / 2.0));
      trip.emplace_back(k, k, cb);
      if (j - 1 >= 1) trip.emplace_back(k, unknown(i, j - 1), -cb);
    }
  }
  Eigen::SparseMatrix<double> K(n, n);
  K.setFromTriplets(trip.begin(), trip.end());
  ldlt_.compute(K);
  if (ldlt_.info() != Eigen::Success)
    throw NumericsError("elliptic", "factorization of the interior operator failed");
}

Solution Solver::solve(const Field& ell1, const Field& ell2, const std::vector<double>& h1,
                       const std::vector<double>& h3, const std::vector<double>& h4) const {
  const int nx = grid_.nx, ny = grid_.ny;
  if (!ell1.grid().same_shape(grid_) || !ell2.grid().same_shape(grid_))
    throw ConfigError("elliptic", "source fields do not match the solver grid");
  if (static_cast<int>(h1.size()) != ny || static_cast<int>(h3.size()) != ny ||
      static_cast<int>(h4.size()) != nx)
    throw ConfigError("elliptic", "boundary data sizes do not match the solver grid");
  double scale = 0.0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) scale = std::max(scale, std::abs(ell1(i, j)));
  for (int i = 0; i < nx; ++i)
    if (std::abs(ell1(i, 0)) > 1e-12 * (1.0 + scale))
      throw ConfigError("elliptic", "ell1 must vanish on the axis row");

  // rescaled sources and side derivative data
  Field F1(grid_), F2(grid_);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      F1(i, j) = s_ * ell1(i, j);
      F2(i, j) = ell2(i, j);
    }
  std::vector<double> sh1(ny), sh3(ny);
  for (int j = 0; j < ny; ++j) {
    sh1[j] = s_ * h1[j];
    sh3[j] = s_ * h3[j];
  }
  const std::vector<double> dh1 = dvec(sh1, hy_), dh3 = dvec(sh3, hy_);
  std::vector<double> gl(ny), gr(ny);
  for (int j = 0; j < ny; ++j) {
    gl[j] = F1(0, j) - dh1[j];
    gr[j] = F1(nx - 1, j) - dh3[j];
  }

  // right-hand side: face integrals of (F1, F2), Neumann side fluxes, and the
  // eliminated Dirichlet wall values
  Eigen::VectorXd b = Eigen::VectorXd::Zero(nx * (ny - 2));
  for (int i = 0; i < nx; ++i) {
    for (int j = 1; j <= ny - 2; ++j) {
      const int k = unknown(i, j);
      const double dxw = (i > 0 && i < nx - 1) ? hx_ : hx_ / 2.0;
      const double wy = face_hi_[j] - face_lo_[j];
      double r = 0.0;
      if (i < nx - 1)
        r += 0.5 * (F1(i, j) + F1(i + 1, j)) * wy;
      else
        r += F1(i, j) * wy;
      if (i > 0)
        r -= 0.5 * (F1(i, j) + F1(i - 1, j)) * wy;
      else
        r -= F1(i, j) * wy;
      r += dxw * 0.5 * (F2(i, j) + F2(i, j + 1));
      r -= dxw * 0.5 * (F2(i, j) + F2(i, j - 1));
      b[k] = -r;
      if (i == 0) b[k] -= gl[j] * wy;
      if (i == nx - 1) b[k] += gr[j] * wy;
      if (j + 1 == ny - 1) b[k] += dxw / (hy_ * (y_[j] + hy_ / 2.0)) * h4[i];
    }
  }
  const Eigen::VectorXd u = ldlt_.solve(b);
  if (ldlt_.info() != Eigen::Success)
    throw NumericsError("elliptic", "back-substitution failed");

  // V2 = u / eta with the Dirichlet rows restored
  Field V2(grid_);
  for (int i = 0; i < nx; ++i) {
    V2(i, 0) = 0.0;
    V2(i, ny - 1) = h4[i];
    for (int j = 1; j <= ny - 2; ++j) V2(i, j) = u[unknown(i, j)] / y_[j];
  }

  // two-sweep recovery of V1 = sqrt(B/A) H1:
  //   streamwise along the mid-channel anchor row (E2 rearranged),
  //   then vertically in both directions (E1 rearranged)
  const int ja = ny / 2;
  std::vector<double> integ_x(nx);
  for (int i = 0; i < nx; ++i) {
    const double dyV2 = (V2(i, ja + 1) - V2(i, ja - 1)) / (2.0 * hy_);
    integ_x[i] = dyV2 + V2(i, ja) / y_[ja] - F2(i, ja);
  }
  std::vector<double> anchor(nx);
  anchor[0] = sh1[ja];
  for (int i = 1; i < nx; ++i)
    anchor[i] = anchor[i - 1] + 0.5 * (integ_x[i] + integ_x[i - 1]) * hx_;

  Field dxV2(grid_);
  for (int j = 0; j < ny; ++j) {
    dxV2(0, j) = (-3.0 * V2(0, j) + 4.0 * V2(1, j) - V2(2, j)) / (2.0 * hx_);
    for (int i = 1; i < nx - 1; ++i) dxV2(i, j) = (V2(i + 1, j) - V2(i - 1, j)) / (2.0 * hx_);
    dxV2(nx - 1, j) =
        (3.0 * V2(nx - 1, j) - 4.0 * V2(nx - 2, j) + V2(nx - 3, j)) / (2.0 * hx_);
  }
  Field V1(grid_);
  for (int i = 0; i < nx; ++i) {
    V1(i, ja) = anchor[i];
    for (int j = ja + 1; j < ny; ++j)
      V1(i, j) = V1(i, j - 1) +
                 0.5 * ((F1(i, j) - dxV2(i, j)) + (F1(i, j - 1) - dxV2(i, j - 1))) * hy_;
    for (int j = ja - 1; j >= 0; --j)
      V1(i, j) = V1(i, j + 1) -
                 0.5 * ((F1(i, j) - dxV2(i, j)) + (F1(i, j + 1) - dxV2(i, j + 1))) * hy_;
  }

  Solution sol;
  sol.H2 = V2;
  sol.H1 = Field(grid_);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) sol.H1(i, j) = V1(i, j) / s_;

  std::vector<double> dl(ny), dr(ny);
  for (int j = 0; j < ny; ++j) {
    dl[j] = y_[j] * (sol.H1(0, j) - h1[j]);
    dr[j] = y_[j] * (sol.H1(nx - 1, j) - h3[j]);
  }
  sol.left_mismatch = B_ * trapezoid(dl, hy_);
  sol.exit_mismatch = B_ * trapezoid(dr, hy_);
  sol.defect = solvability_defect(grid_, B_, ell2, h1, h3, h4);

  // exact side traces take precedence over the recovered ones
  for (int j = 0; j < ny; ++j) {
    sol.H1(0, j) = h1[j];
    sol.H1(nx - 1, j) = h3[j];
  }
  return sol;
}

Solution solve(const Grid& grid, double A, double B, const Field& ell1, const Field& ell2,
               const std::vector<double>& h1, const std::vector<double>& h3,
               const std::vector<double>& h4) {
  return Solver(grid, A, B).solve(ell1, ell2, h1, h3, h4);
}

}  // namespace nozzle::elliptic
