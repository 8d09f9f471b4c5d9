#ifndef NOZZLE_LAGRANGE_HPP_
#define NOZZLE_LAGRANGE_HPP_

#include <vector>

namespace nozzle::lagrange {

// Streamline (stream-function) radial coordinate.  At a fixed duct section,
//   eta(r)^2 = integral_0^r t (rho u)(t) dt,
// so eta is the square root of the scaled stream function and the axis maps
// to eta = 0.  With the background normalized to rho q = 2 the wall streamline
// sits exactly at eta = 1.
//
// The discrete forward/inverse maps below integrate the trapezoid rule in the
// squared variables,
//   eta^2_{j+1} - eta^2_j = (r^2_{j+1} - r^2_j) (g_j + g_{j+1}) / 4,  g = rho u,
// which makes them exact mutual inverses for the same nodal g.

// g = rho*u sampled at the r nodes; r must start at 0 and increase.
std::vector<double> eta_from_physical(const std::vector<double>& r,
                                      const std::vector<double>& rho_u);

// g = rho*u sampled at the eta nodes; eta must start at 0 and increase.
std::vector<double> radius_from_eta(const std::vector<double>& eta,
                                    const std::vector<double>& rho_u);

// Jacobian determinant of (z,r) -> (xi,eta), i.e. r rho u / (2 eta), with its
// axis limit sqrt(rho u / 2).
double jacobian(double r, double rho_u, double eta);

// The coefficient 2 eta / r, with its axis limit sqrt(2 rho u(z,0)).
double two_eta_over_r(double eta, double r, double rho_u_axis);

// Front-straightening change of the streamwise variable.  The curved front
// xi = psi(eta) is pulled onto the fixed vertical line xi~ = front_anchor
// while the outlet xi = L stays put:
//   to_computational:   xi~ = L + (L - anchor) (xi  - L)/(L - psi(eta))
//   from_computational: xi  = L + (L - psi(eta))(xi~ - L)/(L - anchor).
// psi is reconstructed from its slope profile and the wall intercept,
//   psi(eta) = anchor + shift - integral_eta^1 psi'(tau) dtau.
class ShockFitting {
 public:
  // psi_prime holds psi'(eta_j) on the uniform eta grid over [0,1].
  ShockFitting(double L, double anchor, double shift, std::vector<double> psi_prime);

  double L() const { return L_; }
  double anchor() const { return anchor_; }
  double shift() const { return shift_; }
  double front_at_wall() const { return anchor_ + shift_; }

  int ny() const { return static_cast<int>(psi_.size()); }
  double psi(int j) const { return psi_[j]; }
  double psi_prime(int j) const { return psi_prime_[j]; }
  // integral_eta_j^1 psi'(tau) dtau
  double tail(int j) const { return tail_[j]; }

  double to_computational(double xi, int j) const;
  double from_computational(double xi_t, int j) const;

  // d xi~/d xi = (L - anchor)/(L - psi(eta)); and the exact difference
  // stretch - 1 = (shift - tail)/(L - psi), kept separate to avoid cancellation.
  double stretch(int j) const;
  double stretch_minus_one(int j) const;

  // zeta1 = d xi~/d eta at fixed xi = (xi~ - L) psi'(eta)/(L - psi(eta)).
  double zeta1(double xi_t, int j) const;

 private:
  double L_, anchor_, shift_;
  std::vector<double> psi_prime_, tail_, psi_;
};

}  // namespace nozzle::lagrange

#endif  // NOZZLE_LAGRANGE_HPP_
