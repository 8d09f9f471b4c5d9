#include "nozzle/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nozzle/errors.hpp"
#include "nozzle/lagrange.hpp"
#include "nozzle/supersonic.hpp"

namespace nozzle::output {
namespace {

// Physical radii of one grid column from its mass-flux samples g = rho u on
// the uniform eta grid.
std::vector<double> column_radii(const std::vector<double>& eta,
                                 const std::vector<double>& g) {
  return lagrange::radius_from_eta(eta, g);
}

void append_state_row(std::vector<std::vector<double>>& rows, const gas::GasModel& gm,
                      const gas::Normalization& norm, double z, double r, double xi,
                      double eta, const gas::FlowState& st) {
  const double rho = gm.density(st.p, st.s);
  const double mach = gm.mach(st.q, st.p, rho);
  const gas::FlowState user = norm.unapply(gm, st);
  const double rho_user = rho / norm.a;
  rows.push_back({z, r, xi, eta, user.theta, user.p, user.q, user.s, rho_user, mach});
}

}  // namespace

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError(dir, "cannot create output directory: " + ec.message());
}

void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path, "cannot open output file");
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << (c ? "," : "") << header[c];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << format17(row[c]);
    }
    out << '\n';
  }
  if (!out) throw ConfigError(path, "write failure");
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path, "cannot open output file");
  out << doc.dump(2) << '\n';
  if (!out) throw ConfigError(path, "write failure");
}

const std::vector<std::string>& region_header() {
  static const std::vector<std::string> h = {"z",     "r", "xi", "eta", "theta",
                                             "p",     "q", "s",  "rho", "mach"};
  return h;
}

std::vector<std::vector<double>> downstream_rows(const iteration::Driver& d,
                                                 const iteration::Iterate& it,
                                                 const gas::Normalization& norm) {
  const Grid& g = d.downstream_grid();
  const gas::GasModel& gm = d.params().gas;
  const lagrange::ShockFitting front = d.front_of(it);

  std::vector<double> eta(g.ny);
  for (int j = 0; j < g.ny; ++j) eta[j] = g.y(j);

  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(g.nx) * g.ny);
  std::vector<gas::FlowState> col(g.ny);
  std::vector<double> flux(g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      col[j] = d.downstream_state(it, i, j);
      flux[j] = gm.density(col[j].p, col[j].s) * col[j].q * std::cos(col[j].theta);
    }
    const auto r = column_radii(eta, flux);
    for (int j = 0; j < g.ny; ++j) {
      const double z = front.from_computational(g.x(i), j);
      append_state_row(rows, gm, norm, z, r[j], g.x(i), eta[j], col[j]);
    }
  }
  return rows;
}

std::vector<std::vector<double>> upstream_rows(const iteration::Driver& d,
                                               const iteration::Iterate& it,
                                               const gas::Normalization& norm) {
  const supersonic::Solution& up = d.upstream();
  const Grid& g = up.grid;
  const gas::GasModel& gm = d.params().gas;
  const lagrange::ShockFitting front = d.front_of(it);

  std::vector<double> eta(g.ny);
  for (int j = 0; j < g.ny; ++j) eta[j] = g.y(j);

  std::vector<std::vector<double>> rows;
  std::vector<gas::FlowState> col(g.ny);
  std::vector<double> flux(g.ny);
  for (int i = 0; i < g.nx; ++i) {
    const double xi = g.x(i);
    for (int j = 0; j < g.ny; ++j) {
      col[j] = {up.theta(i, j), up.p(i, j), up.q(i, j), up.s(i, j)};
      flux[j] = gm.density(col[j].p, col[j].s) * col[j].q * std::cos(col[j].theta);
    }
    const auto r = column_radii(eta, flux);
    for (int j = 0; j < g.ny; ++j) {
      if (xi > front.psi(j)) continue;  // behind the front: reported by the other table
      append_state_row(rows, gm, norm, xi, r[j], xi, eta[j], col[j]);
    }
  }
  return rows;
}

std::vector<std::vector<double>> front_rows(const iteration::Driver& d,
                                            const iteration::Iterate& it) {
  const lagrange::ShockFitting front = d.front_of(it);
  const gas::GasModel& gm = d.params().gas;
  const int ny = front.ny();

  std::vector<double> eta(ny), psi(ny);
  for (int j = 0; j < ny; ++j) {
    eta[j] = static_cast<double>(j) / (ny - 1);
    psi[j] = front.psi(j);
  }
  const auto trace = supersonic::sample_on_curve(d.upstream(), psi);
  std::vector<double> flux(ny);
  for (int j = 0; j < ny; ++j) {
    flux[j] = gm.density(trace[j].p, trace[j].s) * trace[j].q * std::cos(trace[j].theta);
  }
  const auto r = column_radii(eta, flux);

  std::vector<std::vector<double>> rows;
  rows.reserve(ny);
  for (int j = 0; j < ny; ++j) {
    rows.push_back({eta[j], psi[j], front.psi_prime(j), psi[j], r[j]});
  }
  return rows;
}

std::vector<std::vector<double>> scan_rows(const adm::PositionProblem& prob, int samples) {
  std::vector<std::vector<double>> rows;
  rows.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double z = prob.length * k / (samples - 1);
    rows.push_back({z, adm::criterion_R(prob, z), prob.pe_bar});
  }
  return rows;
}

std::vector<std::vector<double>> convergence_rows(const iteration::Report& rep) {
  std::vector<std::vector<double>> rows;
  rows.reserve(rep.increment_sup.size());
  for (std::size_t k = 0; k < rep.increment_sup.size(); ++k) {
    // contraction[0] is the ratio of iteration 2 over iteration 1
    const double ratio = (k >= 1 && k - 1 < rep.contraction.size()) ? rep.contraction[k - 1] : 0.0;
    rows.push_back({static_cast<double>(k + 1), rep.increment_sup[k], rep.increment_l2[k],
                    ratio});
  }
  return rows;
}

}  // namespace nozzle::output
