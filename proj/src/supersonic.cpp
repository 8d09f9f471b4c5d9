#include "nozzle/supersonic.hpp"

#include <algorithm>
#include <cmath>

#include "nozzle/errors.hpp"
#include "nozzle/lagrange.hpp"

namespace nozzle::supersonic {

namespace {

// Per-column characteristic data.  The two families are
//   dxi/deta = lambda_pm = (2 eta / r) (-sin(theta) +- sqrt(M^2-1) cos(theta)) / (rho q),
// marched in xi, so the scheme uses the inverse slope deta/dxi.  Along a
// characteristic the compatibility relation reads
//   d/dxi (theta +- k p) = -S_pm,   k = sqrt(M^2-1)/(rho q^2),
//   S_pm = (sin(theta)/r) / (-sin(theta) +- sqrt(M^2-1) cos(theta)),
// where sin(theta)/r extends to d theta/d r on the axis.
struct Coeffs {
  std::vector<double> k;
  std::vector<double> inv_plus, inv_minus;  // deta/dxi per family
  std::vector<double> S_plus, S_minus;
};

struct Engine {
  const gas::GasModel* g;
  gas::NormalState bar;
  double B_bar = 0.0, s_bar = 0.0;
  Mode mode = Mode::nonlinear;
  double sigma = 0.0;
  const Profile* wall = nullptr;
  int ny = 0;
  double hy = 0.0;
  // frozen background coefficients for the linear mode
  double k_bar = 0.0, inv_bar = 0.0;

  std::vector<double> eta;

  double wall_theta(double xi) const {
    const double t = wall != nullptr ? sigma * (*wall)(xi) : 0.0;
    return mode == Mode::linear ? t : std::atan(t);
  }

  // One-sided second-order d theta/d eta at the axis (theta(.,0) = 0).
  double axis_slope(const std::vector<double>& theta) const {
    return (4.0 * theta[1] - theta[2]) / (2.0 * hy);
  }

  Coeffs build(const std::vector<double>& theta, const std::vector<double>& p) const {
    Coeffs c;
    c.k.resize(ny);
    c.inv_plus.resize(ny);
    c.inv_minus.resize(ny);
    c.S_plus.resize(ny);
    c.S_minus.resize(ny);

    if (mode == Mode::linear) {
      for (int j = 0; j < ny; ++j) {
        c.k[j] = k_bar;
        c.inv_plus[j] = inv_bar;
        c.inv_minus[j] = -inv_bar;
        const double sor = j == 0 ? axis_slope(theta) : theta[j] / eta[j];
        c.S_plus[j] = inv_bar * sor;
        c.S_minus[j] = -inv_bar * sor;
      }
      return c;
    }

    std::vector<double> q(ny), flux(ny);
    for (int j = 0; j < ny; ++j) {
      const double rho = g->density(p[j], s_bar);
      const double q2 = 2.0 * (B_bar - g->enthalpy(p[j], rho));
      if (!(q2 > 0.0))
        throw NumericsError("supersonic", "stagnated flow while marching the duct");
      const double M2 = q2 / g->sound_speed2(p[j], rho);
      if (!(M2 > 1.0 + 1e-12))
        throw NumericsError("supersonic", "flow lost supersonicity while marching the duct");
      q[j] = std::sqrt(q2);
      flux[j] = rho * q[j] * std::cos(theta[j]);
    }
    const std::vector<double> r = lagrange::radius_from_eta(eta, flux);

    for (int j = 0; j < ny; ++j) {
      const double rho = g->density(p[j], s_bar);
      const double sq = std::sqrt(q[j] * q[j] / g->sound_speed2(p[j], rho) - 1.0);
      const double sn = std::sin(theta[j]), cs = std::cos(theta[j]);
      const double Dp = -sn + sq * cs, Dm = -sn - sq * cs;
      const double roe2 = j == 0 ? 1.0 / std::sqrt(2.0 * flux[0]) : r[j] / (2.0 * eta[j]);
      const double sor = j == 0 ? axis_slope(theta) * std::sqrt(flux[0] / 2.0)
                                : sn / r[j];
      c.k[j] = sq / (rho * q[j] * q[j]);
      c.inv_plus[j] = roe2 * rho * q[j] / Dp;
      c.inv_minus[j] = roe2 * rho * q[j] / Dm;
      c.S_plus[j] = sor / Dp;
      c.S_minus[j] = sor / Dm;
    }
    return c;
  }

  // Characteristic step from the (old) column to xi + dxi: the head
  // coefficients come from the current head estimate, so calling this twice
  // (predictor with head = old, corrector with head = predicted) gives the
  // usual second-order two-stage scheme.
  void step(double dxi, double xi_new, const std::vector<double>& th_old,
            const std::vector<double>& p_old, const Coeffs& c_old,
            const Coeffs& c_head, std::vector<double>& th_new,
            std::vector<double>& p_new) const {
    const auto at = [this](const std::vector<double>& f, double y) {
      return interp_cubic(f, 0.0, hy, y);
    };
    for (int j = 0; j < ny; ++j) {
      double R[2] = {0.0, 0.0}, kk[2] = {0.0, 0.0};
      const bool need_plus = j > 0, need_minus = j < ny - 1;
      for (int fam = 0; fam < 2; ++fam) {
        if ((fam == 0 && !need_plus) || (fam == 1 && !need_minus)) continue;
        const auto& inv_old = fam == 0 ? c_old.inv_plus : c_old.inv_minus;
        const auto& inv_head = fam == 0 ? c_head.inv_plus : c_head.inv_minus;
        const auto& S_old = fam == 0 ? c_old.S_plus : c_old.S_minus;
        const auto& S_head = fam == 0 ? c_head.S_plus : c_head.S_minus;
        // locate the foot with one slope refinement, then average the
        // coefficients between foot and head (trapezoidal compatibility)
        double ef = eta[j] - dxi * inv_head[j];
        ef = std::clamp(ef, 0.0, 1.0);
        ef = eta[j] - dxi * 0.5 * (inv_head[j] + at(inv_old, ef));
        ef = std::clamp(ef, 0.0, 1.0);
        const double th_f = at(th_old, ef), p_f = at(p_old, ef);
        const double k_av = 0.5 * (at(c_old.k, ef) + c_head.k[j]);
        const double S_av = 0.5 * (at(S_old, ef) + S_head[j]);
        const double sgn = fam == 0 ? 1.0 : -1.0;
        R[fam] = th_f + sgn * k_av * p_f - dxi * S_av;
        kk[fam] = k_av;
      }
      if (j == 0) {
        th_new[j] = 0.0;
        p_new[j] = -R[1] / kk[1];
      } else if (j == ny - 1) {
        th_new[j] = wall_theta(xi_new);
        p_new[j] = (R[0] - th_new[j]) / kk[0];
      } else {
        p_new[j] = (R[0] - R[1]) / (kk[0] + kk[1]);
        th_new[j] = R[0] - kk[0] * p_new[j];
      }
    }
  }
};

}  // namespace

Solution march(const gas::GasModel& g, const gas::NormalState& upstream,
               const Options& opt) {
  if (opt.ny < 5) throw ConfigError("supersonic", "need at least 5 cross-stream nodes");
  if (!(opt.length > 0.0)) throw ConfigError("supersonic", "duct length must be positive");
  if (!(opt.cfl > 0.0 && opt.cfl <= 1.0))
    throw ConfigError("supersonic", "cfl fraction must lie in (0,1]");
  if (opt.sigma != 0.0 && opt.wall == nullptr)
    throw ConfigError("supersonic", "nonzero sigma requires a wall turning profile");
  const double M2 = upstream.q * upstream.q / g.sound_speed2(upstream.p, upstream.rho);
  if (!(M2 > 1.0))
    throw PhysicsError("supersonic", "upstream background must be supersonic");

  Engine e;
  e.g = &g;
  e.bar = upstream;
  e.B_bar = g.bernoulli(upstream.q, upstream.p, upstream.rho);
  e.s_bar = g.entropy(upstream.p, upstream.rho);
  e.mode = opt.mode;
  e.sigma = opt.sigma;
  e.wall = opt.wall;
  e.ny = opt.ny;
  e.hy = 1.0 / (opt.ny - 1);
  const double sq_bar = std::sqrt(M2 - 1.0);
  const double flux_bar = upstream.rho * upstream.q;
  e.k_bar = sq_bar / (upstream.rho * upstream.q * upstream.q);
  e.inv_bar = std::sqrt(flux_bar / 2.0) / sq_bar;
  e.eta.resize(opt.ny);
  for (int j = 0; j < opt.ny; ++j) e.eta[j] = j * e.hy;

  // sigma- and mode-independent step from the background characteristic slope
  const int nsteps = std::max(1, static_cast<int>(
                                     std::ceil(opt.length * e.inv_bar / (opt.cfl * e.hy))));
  const double dxi = opt.length / nsteps;

  Solution sol;
  sol.mode = opt.mode;
  sol.upstream = upstream;
  sol.bernoulli = e.B_bar;
  sol.entropy = e.s_bar;
  sol.grid = Grid{nsteps + 1, opt.ny, 0.0, opt.length, 0.0, 1.0};
  sol.theta = Field(sol.grid);
  sol.p = Field(sol.grid);
  sol.q = Field(sol.grid);
  sol.s = Field(sol.grid);

  std::vector<double> th_old(opt.ny, 0.0), p_old(opt.ny, 0.0);
  if (opt.mode == Mode::nonlinear) p_old.assign(opt.ny, upstream.p);

  const auto store = [&](int i, const std::vector<double>& th, const std::vector<double>& pp) {
    for (int j = 0; j < opt.ny; ++j) {
      sol.theta(i, j) = th[j];
      sol.p(i, j) = pp[j];
      if (opt.mode == Mode::linear) {
        sol.q(i, j) = -pp[j] / flux_bar;
        sol.s(i, j) = 0.0;
      } else {
        const double rho = g.density(pp[j], e.s_bar);
        sol.q(i, j) = std::sqrt(2.0 * (e.B_bar - g.enthalpy(pp[j], rho)));
        sol.s(i, j) = e.s_bar;
      }
    }
  };
  store(0, th_old, p_old);

  std::vector<double> th_new(opt.ny), p_new(opt.ny);
  for (int i = 1; i <= nsteps; ++i) {
    const double xi_new = sol.grid.x(i);
    const Coeffs c_old = e.build(th_old, p_old);
    e.step(dxi, xi_new, th_old, p_old, c_old, c_old, th_new, p_new);
    const Coeffs c_pred = e.build(th_new, p_new);
    e.step(dxi, xi_new, th_old, p_old, c_old, c_pred, th_new, p_new);
    store(i, th_new, p_new);
    th_old = th_new;
    p_old = p_new;
  }
  return sol;
}

std::array<std::vector<double>, 4> section_at(const Solution& sol, double xi) {
  std::array<std::vector<double>, 4> out;
  const Field* fields[4] = {&sol.theta, &sol.p, &sol.q, &sol.s};
  for (int c = 0; c < 4; ++c) {
    out[c].resize(sol.grid.ny);
    for (int j = 0; j < sol.grid.ny; ++j)
      out[c][j] = interp_cubic(fields[c]->row(j), sol.grid.x0, sol.grid.hx(), xi);
  }
  return out;
}

std::vector<gas::FlowState> sample_on_curve(const Solution& sol,
                                            const std::vector<double>& xi_of_row) {
  std::vector<gas::FlowState> out(xi_of_row.size());
  for (size_t j = 0; j < xi_of_row.size(); ++j) {
    const int jj = static_cast<int>(j);
    const double xi = xi_of_row[j];
    out[j].theta = interp_cubic(sol.theta.row(jj), sol.grid.x0, sol.grid.hx(), xi);
    out[j].p = interp_cubic(sol.p.row(jj), sol.grid.x0, sol.grid.hx(), xi);
    out[j].q = interp_cubic(sol.q.row(jj), sol.grid.x0, sol.grid.hx(), xi);
    out[j].s = interp_cubic(sol.s.row(jj), sol.grid.x0, sol.grid.hx(), xi);
  }
  return out;
}

}  // namespace nozzle::supersonic
