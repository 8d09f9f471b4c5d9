#include "nozzle/lagrange.hpp"

#include <cmath>

#include "nozzle/errors.hpp"

namespace nozzle::lagrange {

std::vector<double> eta_from_physical(const std::vector<double>& r,
                                      const std::vector<double>& rho_u) {
  if (r.size() != rho_u.size() || r.size() < 2)
    throw NumericsError("eta_from_physical", "mismatched or short node arrays");
  if (r.front() != 0.0)
    throw NumericsError("eta_from_physical", "radial nodes must start on the axis");
  std::vector<double> eta(r.size());
  eta[0] = 0.0;
  double eta2 = 0.0;
  for (size_t j = 0; j + 1 < r.size(); ++j) {
    const double dr2 = r[j + 1] * r[j + 1] - r[j] * r[j];
    eta2 += dr2 * (rho_u[j] + rho_u[j + 1]) / 4.0;
    if (!(eta2 > 0.0))
      throw NumericsError("eta_from_physical", "stream function not increasing");
    eta[j + 1] = std::sqrt(eta2);
  }
  return eta;
}

std::vector<double> radius_from_eta(const std::vector<double>& eta,
                                    const std::vector<double>& rho_u) {
  if (eta.size() != rho_u.size() || eta.size() < 2)
    throw NumericsError("radius_from_eta", "mismatched or short node arrays");
  if (eta.front() != 0.0)
    throw NumericsError("radius_from_eta", "eta nodes must start on the axis");
  std::vector<double> r(eta.size());
  r[0] = 0.0;
  double r2 = 0.0;
  for (size_t j = 0; j + 1 < eta.size(); ++j) {
    const double g = rho_u[j] + rho_u[j + 1];
    if (!(g > 0.0))
      throw NumericsError("radius_from_eta", "axial mass flux must stay positive");
    r2 += (eta[j + 1] * eta[j + 1] - eta[j] * eta[j]) * 4.0 / g;
    r[j + 1] = std::sqrt(r2);
  }
  return r;
}

double jacobian(double r, double rho_u, double eta) {
  if (eta <= 0.0) return std::sqrt(rho_u / 2.0);
  return r * rho_u / (2.0 * eta);
}

double two_eta_over_r(double eta, double r, double rho_u_axis) {
  if (eta <= 0.0 || r <= 0.0) return std::sqrt(2.0 * rho_u_axis);
  return 2.0 * eta / r;
}

ShockFitting::ShockFitting(double L, double anchor, double shift,
                           std::vector<double> psi_prime)
    : L_(L), anchor_(anchor), shift_(shift), psi_prime_(std::move(psi_prime)) {
  const int ny = static_cast<int>(psi_prime_.size());
  if (ny < 2) throw NumericsError("ShockFitting", "need at least two slope nodes");
  const double hy = 1.0 / (ny - 1);
  tail_.assign(ny, 0.0);
  for (int j = ny - 2; j >= 0; --j)
    tail_[j] = tail_[j + 1] + 0.5 * hy * (psi_prime_[j] + psi_prime_[j + 1]);
  psi_.assign(ny, 0.0);
  for (int j = 0; j < ny; ++j) {
    psi_[j] = anchor_ + shift_ - tail_[j];
    if (!(psi_[j] > 0.0 && psi_[j] < L_))
      throw NumericsError("ShockFitting", "front leaves the duct interior");
  }
}

double ShockFitting::to_computational(double xi, int j) const {
  return L_ + (L_ - anchor_) * (xi - L_) / (L_ - psi_[j]);
}

double ShockFitting::from_computational(double xi_t, int j) const {
  return L_ + (L_ - psi_[j]) * (xi_t - L_) / (L_ - anchor_);
}

double ShockFitting::stretch(int j) const { return (L_ - anchor_) / (L_ - psi_[j]); }

double ShockFitting::stretch_minus_one(int j) const {
  return (shift_ - tail_[j]) / (L_ - psi_[j]);
}

double ShockFitting::zeta1(double xi_t, int j) const {
  return (xi_t - L_) * psi_prime_[j] / (L_ - psi_[j]);
}

}  // namespace nozzle::lagrange
