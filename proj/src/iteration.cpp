#include "nozzle/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nozzle/errors.hpp"

namespace nozzle::iteration {

namespace {

double interp_row(const Field& f, int j, double x) {
  return interp_cubic(f.row(j), f.grid().x0, f.grid().hx(), x);
}

double field_diff_sup(const Field& a, const Field& b) {
  double m = 0.0;
  for (size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

double field_diff_l2sq(const Field& a, const Field& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.data().size(); ++k) {
    const double d = a.data()[k] - b.data()[k];
    s += d * d;
  }
  return a.grid().hx() * a.grid().hy() * s;
}

}  // namespace

Driver::Driver(Params params) : params_(std::move(params)) {
  params_.gas.validate();
  if (params_.ny < 5)
    throw ConfigError("iteration", "need at least 5 cross-stream nodes");
  if (!(params_.length > 0.0))
    throw ConfigError("iteration", "duct length must be positive");
  if (params_.max_iter < 1)
    throw ConfigError("iteration", "max_iter must be at least 1");
  if (params_.sigma != 0.0 && params_.theta.is_zero())
    throw ConfigError("iteration",
                      "wall turning profile is identically zero; nothing perturbs the flow");

  bar_plus_ = gas::normal_shock_downstream(params_.gas, params_.upstream);
  lin_ = rh::linearized_coefficients(params_.gas, params_.upstream, bar_plus_);
  s_plus_ = params_.gas.entropy(bar_plus_.p, bar_plus_.rho);
  T_plus_ = params_.gas.temperature(bar_plus_.p, bar_plus_.rho);
  B_plus_ = params_.gas.bernoulli(bar_plus_.q, bar_plus_.p, bar_plus_.rho);
  bar_plus_state_ = gas::FlowState{0.0, bar_plus_.p, bar_plus_.q, s_plus_};

  pe_bar_ = adm::exit_pressure_functional(params_.gas, bar_plus_, params_.pe);
  adm::PositionProblem pp{&params_.theta, params_.length, lin_.kdot, pe_bar_};
  position_ = params_.position_bracket
                  ? adm::solve_in_bracket(pp, params_.position_bracket->first,
                                          params_.position_bracket->second)
                  : adm::solve_shock_position(pp);

  if (params_.sigma != 0.0) {
    const double scale = std::max(1.0, params_.theta.sup_abs(0.0, params_.length));
    if (std::abs(position_.theta_at_root) < params_.theta_degeneracy * scale)
      throw PhysicsError("iteration",
                         "wall profile is flat at the front position xi* = " +
                             std::to_string(position_.xi_star) +
                             "; the position update is degenerate there");
  }

  supersonic::Options mo;
  mo.ny = params_.ny;
  mo.length = params_.length;
  mo.sigma = params_.sigma;
  mo.wall = &params_.theta;
  mo.cfl = params_.cfl;
  mo.mode = supersonic::Mode::nonlinear;
  upstream_ = supersonic::march(params_.gas, params_.upstream, mo);
  mo.mode = supersonic::Mode::linear;
  upstream_linear_ = supersonic::march(params_.gas, params_.upstream, mo);

  const int nx = params_.nx_sub > 0 ? params_.nx_sub : params_.ny;
  sub_grid_ = Grid{nx, params_.ny, position_.xi_star, params_.length, 0.0, 1.0};
  eta_.resize(params_.ny);
  for (int j = 0; j < params_.ny; ++j) eta_[j] = sub_grid_.y(j);

  elliptic_A_ = 2.0 * bar_plus_.q;
  elliptic_B_ = adm::exit_weight(params_.gas, bar_plus_);
  esolver_.emplace(sub_grid_, elliptic_A_, elliptic_B_);

  tol_ = params_.tol > 0.0
             ? params_.tol
             : std::max(1e-10, 1e-4 * params_.sigma * params_.sigma);
}

lagrange::ShockFitting Driver::front_of(const Iterate& it) const {
  return lagrange::ShockFitting(params_.length, position_.xi_star, it.dxi_star,
                                it.dpsi_prime);
}

gas::FlowState Driver::downstream_state(const Iterate& it, int i, int j) const {
  return gas::FlowState{it.dtheta(i, j), bar_plus_.p + it.dp(i, j),
                        bar_plus_.q + it.dq(i, j), s_plus_ + it.ds(i, j)};
}

Iterate Driver::initial_approximation() const {
  const int nx = sub_grid_.nx, ny = sub_grid_.ny;
  Iterate it;
  it.dxi_star = 0.0;
  it.dpsi_prime.assign(ny, 0.0);
  it.dq = Field(sub_grid_);
  it.ds = Field(sub_grid_);

  // linearized upstream traces on the (vertical) linear front
  const auto sec = supersonic::section_at(upstream_linear_, position_.xi_star);
  const std::vector<double>& tdot = sec[0];
  const std::vector<double>& pdot = sec[1];

  std::vector<double> h1(ny), g2(ny), g3(ny), h3(ny), h4(nx);
  for (int j = 0; j < ny; ++j) {
    h1[j] = lin_.g1_per_pminus * pdot[j];
    g2[j] = lin_.g2_per_pminus * pdot[j];
    g3[j] = lin_.g3_per_pminus * pdot[j];
    h3[j] = params_.sigma * params_.pe(eta_[j]);
  }
  for (int i = 0; i < nx; ++i) h4[i] = params_.sigma * params_.theta(sub_grid_.x(i));

  const Field zero(sub_grid_);
  const elliptic::Solution esol = esolver_->solve(zero, zero, h1, h3, h4);
  it.dp = esol.H1;
  it.dtheta = esol.H2;

  for (int j = 0; j < ny; ++j) {
    const double bern = bar_plus_.q * g2[j] + h1[j] / bar_plus_.rho + T_plus_ * g3[j];
    for (int i = 0; i < nx; ++i) {
      it.ds(i, j) = g3[j];
      it.dq(i, j) = (bern - it.dp(i, j) / bar_plus_.rho - T_plus_ * g3[j]) / bar_plus_.q;
    }
  }
  for (int j = 0; j < ny; ++j)
    it.dpsi_prime[j] =
        rh::slope_update(lin_, it.dtheta(0, j), params_.upstream.q * tdot[j]);
  return it;
}

Driver::FrontData Driver::assemble_front(const Iterate& old, double dxi_star) const {
  const int ny = sub_grid_.ny;
  lagrange::ShockFitting front(params_.length, position_.xi_star, dxi_star,
                               old.dpsi_prime);
  std::vector<double> psi(ny);
  for (int j = 0; j < ny; ++j) psi[j] = front.psi(j);
  std::vector<gas::FlowState> minus = supersonic::sample_on_curve(upstream_, psi);

  std::vector<double> flux(ny);
  for (int j = 0; j < ny; ++j) {
    const double rho = params_.gas.density(minus[j].p, minus[j].s);
    flux[j] = rho * minus[j].q * std::cos(minus[j].theta);
  }
  const std::vector<double> r = lagrange::radius_from_eta(eta_, flux);

  FrontData fd{std::move(front), std::move(minus),
               std::vector<std::array<double, 4>>(ny), std::vector<double>(ny),
               std::vector<double>(ny), std::vector<double>(ny),
               std::vector<double>(ny), std::vector<double>(ny)};
  for (int j = 0; j < ny; ++j) {
    rh::FrontPoint fp;
    fp.minus = fd.minus_trace[j];
    fp.plus = downstream_state(old, 0, j);
    fp.two_eta_over_r = lagrange::two_eta_over_r(eta_[j], r[j], flux[0]);
    fp.psi_prime = old.dpsi_prime[j];
    const std::array<double, 4> G = rh::g_functionals(params_.gas, fp);
    fd.g_nonlinear[j] = G;

    const double dU[4] = {old.dtheta(0, j), old.dp(0, j), old.dq(0, j), old.ds(0, j)};
    std::array<double, 3> rhs{};
    for (int k = 0; k < 3; ++k) {
      double a = 0.0;
      for (int c = 0; c < 4; ++c) a += lin_.alpha_plus[k][c] * dU[c];
      rhs[k] = a - G[k];
    }
    const std::array<double, 3> g = rh::solve_front_system(lin_, rhs);
    fd.g1[j] = g[0];
    fd.g2[j] = g[1];
    fd.g3[j] = g[2];
    fd.g4[j] = bar_plus_.q * old.dtheta(0, j) -
               0.5 * lin_.p_jump * old.dpsi_prime[j] - G[3];
    fd.bern[j] = bar_plus_.q * g[1] + g[0] / bar_plus_.rho + T_plus_ * g[2];
  }
  return fd;
}

Driver::Sources Driver::assemble_sources(const Iterate& old,
                                         const lagrange::ShockFitting& front) const {
  const int nx = sub_grid_.nx, ny = sub_grid_.ny;
  Sources src{Field(sub_grid_), Field(sub_grid_), Field(sub_grid_)};
  const Field dth = ddx(old.dtheta);
  const Field dpr = ddx(old.dp);

  std::vector<double> flux(ny), rho_col(ny), q_col(ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const gas::FlowState U = downstream_state(old, i, j);
      rho_col[j] = params_.gas.density(U.p, U.s);
      q_col[j] = U.q;
      flux[j] = rho_col[j] * U.q * std::cos(U.theta);
    }
    const std::vector<double> r = lagrange::radius_from_eta(eta_, flux);
    for (int j = 0; j < ny; ++j) {
      const gas::FlowState U = downstream_state(old, i, j);
      const double rho = rho_col[j], q = q_col[j];
      const double sn = std::sin(U.theta), cs = std::cos(U.theta);
      const double ter = lagrange::two_eta_over_r(eta_[j], r[j], flux[0]);
      const double M2 = q * q / params_.gas.sound_speed2(U.p, rho);
      const double kappa = front.stretch(j);
      const double z1 = front.zeta1(sub_grid_.x(i), j);
      const double tx = dth(i, j), px = dpr(i, j);

      src.f1(i, j) = 2.0 * bar_plus_.q * tx - z1 * px -
                     kappa * ter * (q * cs * tx - sn / (rho * q) * px);

      const double adv = -elliptic_B_ * px - z1 * tx +
                         kappa * ter * (sn / (rho * q)) * tx -
                         kappa * ter * (cs / (rho * q)) * ((M2 - 1.0) / (rho * q * q)) * px;
      // the pure geometric pair theta/eta - (2 eta/r^2) sin(theta)/(rho q)
      // cancels identically on the axis, so it is written as one group
      const double geom =
          j == 0 ? 0.0 : old.dtheta(i, j) / eta_[j] - ter * sn / (r[j] * rho * q);
      src.f2(i, j) = geom + adv;

      src.f3(i, j) = bar_plus_.q * old.dq(i, j) + old.dp(i, j) / bar_plus_.rho +
                     T_plus_ * old.ds(i, j) -
                     (params_.gas.bernoulli(q, U.p, rho) - B_plus_);
    }
  }
  return src;
}

Driver::BoundaryData Driver::assemble_boundary(const Iterate& old,
                                               const FrontData& fd) const {
  const int nx = sub_grid_.nx, ny = sub_grid_.ny;
  BoundaryData bd;
  bd.h1 = fd.g1;

  std::vector<double> flux(ny);
  for (int j = 0; j < ny; ++j) {
    const gas::FlowState U = downstream_state(old, nx - 1, j);
    flux[j] = params_.gas.density(U.p, U.s) * U.q * std::cos(U.theta);
  }
  const std::vector<double> r_exit = lagrange::radius_from_eta(eta_, flux);
  bd.h3.resize(ny);
  for (int j = 0; j < ny; ++j) bd.h3[j] = params_.sigma * params_.pe(r_exit[j]);

  bd.h4.resize(nx);
  for (int i = 0; i < nx; ++i) {
    const double z = fd.front.from_computational(sub_grid_.x(i), ny - 1);
    bd.h4[i] = std::atan(params_.sigma * params_.theta(z));
  }
  return bd;
}

double Driver::data_defect(const Iterate& old, double dxi_star) const {
  const FrontData fd = assemble_front(old, dxi_star);
  const Sources src = assemble_sources(old, fd.front);
  const BoundaryData bd = assemble_boundary(old, fd);
  return elliptic::solvability_defect(sub_grid_, elliptic_B_, src.f2, bd.h1, bd.h3,
                                      bd.h4);
}

double Driver::solve_position(const Iterate& old) const {
  if (params_.sigma == 0.0) return old.dxi_star;

  const double theta_sup = params_.theta.sup_abs(0.0, params_.length);
  const double tol_I = 1e-10 * params_.sigma * std::max(1.0, lin_.kdot * theta_sup);
  const double lo = -0.4 * position_.xi_star;
  const double hi = 0.4 * (params_.length - position_.xi_star);
  const auto I = [&](double x) { return -data_defect(old, x); };

  double x0 = std::clamp(old.dxi_star, lo, hi);
  double I0 = I(x0);
  if (std::abs(I0) <= tol_I) return x0;

  // Newton-style first step from the known leading derivative of the
  // solvability functional, then secant
  const double slope =
      -params_.sigma * lin_.kdot * params_.theta(position_.xi_star + x0);
  double x1;
  if (std::abs(slope) > 1e-300)
    x1 = std::clamp(x0 - I0 / slope, lo, hi);
  else
    x1 = std::clamp(x0 + 1e-3 * (params_.length - position_.xi_star), lo, hi);
  double I1 = I(x1);

  for (int k = 0; k < 40; ++k) {
    if (std::abs(I1) <= tol_I) return x1;
    const double den = I1 - I0;
    if (std::abs(den) < 1e-300 || x1 == x0)
      throw NumericsError("iteration",
                          "front position update stalled (flat solvability functional)");
    const double x2 = std::clamp(x1 - I1 * (x1 - x0) / den, lo, hi);
    x0 = x1;
    I0 = I1;
    x1 = x2;
    I1 = I(x1);
  }
  throw NumericsError("iteration", "front position update did not converge");
}

Iterate Driver::iterate_once(const Iterate& old) const {
  const int nx = sub_grid_.nx, ny = sub_grid_.ny;
  const double dxi = solve_position(old);
  const FrontData fd = assemble_front(old, dxi);
  const Sources src = assemble_sources(old, fd.front);
  const BoundaryData bd = assemble_boundary(old, fd);
  const elliptic::Solution esol = esolver_->solve(src.f1, src.f2, bd.h1, bd.h3, bd.h4);

  Iterate next;
  next.dxi_star = dxi;
  next.dp = esol.H1;
  next.dtheta = esol.H2;
  next.dq = Field(sub_grid_);
  next.ds = Field(sub_grid_);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      next.ds(i, j) = fd.g3[j];
      next.dq(i, j) = (fd.bern[j] + src.f3(i, j) - src.f3(0, j) -
                       next.dp(i, j) / bar_plus_.rho - T_plus_ * fd.g3[j]) /
                      bar_plus_.q;
    }
  next.dpsi_prime.resize(ny);
  for (int j = 0; j < ny; ++j)
    next.dpsi_prime[j] = rh::slope_update(lin_, next.dtheta(0, j), fd.g4[j]);
  return next;
}

Report Driver::run(Iterate& state) const {
  state = initial_approximation();
  Report rep;
  rep.xi_star_dot = position_.xi_star;
  rep.sigma_degenerate = params_.sigma == 0.0;

  int growing = 0;
  for (int k = 1; k <= params_.max_iter; ++k) {
    const Iterate next = iterate_once(state);

    double inc = std::abs(next.dxi_star - state.dxi_star);
    inc = std::max(inc, field_diff_sup(next.dtheta, state.dtheta));
    inc = std::max(inc, field_diff_sup(next.dp, state.dp));
    inc = std::max(inc, field_diff_sup(next.dq, state.dq));
    inc = std::max(inc, field_diff_sup(next.ds, state.ds));
    for (int j = 0; j < sub_grid_.ny; ++j)
      inc = std::max(inc, std::abs(next.dpsi_prime[j] - state.dpsi_prime[j]));

    double l2 = field_diff_l2sq(next.dtheta, state.dtheta) +
                field_diff_l2sq(next.dp, state.dp) +
                field_diff_l2sq(next.dq, state.dq) +
                field_diff_l2sq(next.ds, state.ds);
    for (int j = 0; j < sub_grid_.ny; ++j) {
      const double d = next.dpsi_prime[j] - state.dpsi_prime[j];
      l2 += sub_grid_.hy() * d * d;
    }
    const double dx = next.dxi_star - state.dxi_star;
    l2 = std::sqrt(l2 + dx * dx);

    rep.increment_sup.push_back(inc);
    rep.increment_l2.push_back(l2);
    if (k >= 2) {
      const double prev = rep.increment_sup[k - 2];
      const double ratio = prev > 0.0 ? inc / prev : 0.0;
      rep.contraction.push_back(ratio);
      growing = ratio > 1.0 ? growing + 1 : 0;
      if (growing >= 3)
        throw NumericsError("iteration",
                            "fixed point diverged (three consecutive growing updates)");
    }

    state = next;
    rep.iterations = k;
    if (inc < tol_) {
      rep.converged = true;
      break;
    }
  }
  if (!rep.converged)
    throw NumericsError("iteration", "no convergence after " +
                                         std::to_string(params_.max_iter) + " iterations");

  rep.front_residual_sup = front_residual_sup(state);
  rep.dxi_star = state.dxi_star;
  rep.xi_star = position_.xi_star + state.dxi_star;
  return rep;
}

std::array<double, 4> Driver::front_residual_sup(const Iterate& it) const {
  const FrontData fd = assemble_front(it, it.dxi_star);
  std::array<double, 4> sup{};
  for (int j = 0; j < sub_grid_.ny; ++j)
    for (int k = 0; k < 4; ++k)
      sup[k] = std::max(sup[k], std::abs(fd.g_nonlinear[j][k]));
  return sup;
}

PhysicalSection Driver::section_at_z(const Iterate& it, double z) const {
  const int ny = sub_grid_.ny;
  const lagrange::ShockFitting front = front_of(it);

  PhysicalSection sec;
  sec.z = z;
  sec.theta.resize(ny);
  sec.p.resize(ny);
  sec.q.resize(ny);
  sec.s.resize(ny);
  sec.rho.resize(ny);
  sec.mach.resize(ny);

  std::vector<double> flux(ny);
  for (int j = 0; j < ny; ++j) {
    gas::FlowState U;
    if (z >= front.psi(j)) {
      const double xt = front.to_computational(z, j);
      U.theta = interp_row(it.dtheta, j, xt);
      U.p = bar_plus_.p + interp_row(it.dp, j, xt);
      U.q = bar_plus_.q + interp_row(it.dq, j, xt);
      U.s = s_plus_ + interp_row(it.ds, j, xt);
    } else {
      U.theta = interp_row(upstream_.theta, j, z);
      U.p = interp_row(upstream_.p, j, z);
      U.q = interp_row(upstream_.q, j, z);
      U.s = interp_row(upstream_.s, j, z);
    }
    const double rho = params_.gas.density(U.p, U.s);
    sec.theta[j] = U.theta;
    sec.p[j] = U.p;
    sec.q[j] = U.q;
    sec.s[j] = U.s;
    sec.rho[j] = rho;
    sec.mach[j] = params_.gas.mach(U.q, U.p, rho);
    flux[j] = rho * U.q * std::cos(U.theta);
  }
  sec.r = lagrange::radius_from_eta(eta_, flux);
  return sec;
}

}  // namespace nozzle::iteration
