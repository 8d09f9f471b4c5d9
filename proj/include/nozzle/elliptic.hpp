#ifndef NOZZLE_ELLIPTIC_HPP_
#define NOZZLE_ELLIPTIC_HPP_

#include <vector>

#include <Eigen/Sparse>

#include "nozzle/grid.hpp"

namespace nozzle::elliptic {

// First-order elliptic system on the subsonic side, for H1 (pressure-like)
// and H2 (flow-angle-like) on [xi0, L] x [0, 1]:
//   d_eta H1 + A d_xi H2                = ell1,
//   d_eta H2 + H2/eta - B d_xi H1      = ell2,
// with H1 = h1 on the left edge, H1 = h3 on the right edge, H2 = h4 on the
// wall eta = 1 and H2 = 0 on the axis.  A, B > 0 are frozen background
// coefficients (the system is elliptic, AB = 1 - M+^2 in the application).
//
// Method: rescale x = xi/sqrt(AB), V1 = sqrt(B/A) H1, V2 = H2; then u = eta V2
// solves the self-adjoint equation
//   d_x((1/eta) d_x u) + d_eta((1/eta) d_eta u) = d_x F1 + d_eta F2
// with Dirichlet u on axis/wall and Neumann side fluxes (1/eta) d_x u given by
// the side data.  Finite volumes keep the operator symmetric positive
// definite (Dirichlet rows eliminated); the right-hand side uses face
// integrals of F1, F2 so no interior derivative of the sources is ever taken.
// H1 is then recovered by exact trapezoid sweeps of the first-order system:
// streamwise along a mid-channel anchor row, vertically elsewhere.

struct Solution {
  Field H1, H2;
  // Weighted side-trace mismatches of the recovered H1 before the boundary
  // override, m = B int eta (H1 - data) deta; their difference equals minus
  // the data defect up to O(h^2).
  double left_mismatch = 0.0;
  double exit_mismatch = 0.0;
  double defect = 0.0;  // solvability defect of the supplied data
};

// Solvability functional of the data (the compatible-data invariant):
//   defect = int int eta ell2 dxi deta - int h4 dxi - B int eta (h1 - h3) deta.
// A solvable problem has defect = 0; the position update of the outer
// iteration is exactly the root solve of this quantity.
double solvability_defect(const Grid& grid, double B, const Field& ell2,
                          const std::vector<double>& h1, const std::vector<double>& h3,
                          const std::vector<double>& h4);

class Solver {
 public:
  // Assembles and factorizes the interior operator once for this grid.
  Solver(const Grid& grid, double A, double B);

  const Grid& grid() const { return grid_; }
  double A() const { return A_; }
  double B() const { return B_; }

  // ell1/ell2 live on grid(); h1/h3 have ny entries, h4 has nx entries.
  // Requires ell1 to vanish on the axis row (axisymmetric regularity).
  Solution solve(const Field& ell1, const Field& ell2, const std::vector<double>& h1,
                 const std::vector<double>& h3, const std::vector<double>& h4) const;

 private:
  int unknown(int i, int j) const { return i * (grid_.ny - 2) + (j - 1); }

  Grid grid_;
  double A_ = 0.0, B_ = 0.0;
  double s_ = 0.0;    // sqrt(B/A)
  double sab_ = 0.0;  // sqrt(AB)
  double hx_ = 0.0;   // rescaled streamwise spacing, grid.hx()/sqrt(AB)
  double hy_ = 0.0;
  std::vector<double> y_, face_lo_, face_hi_, wlog_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

// One-shot convenience (assemble, factorize, solve).
Solution solve(const Grid& grid, double A, double B, const Field& ell1, const Field& ell2,
               const std::vector<double>& h1, const std::vector<double>& h3,
               const std::vector<double>& h4);

}  // namespace nozzle::elliptic

#endif  // NOZZLE_ELLIPTIC_HPP_
