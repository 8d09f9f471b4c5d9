// Command-line front end for the transonic duct solver.
//
// Subcommands:
//   check     validate a problem file and report the admissibility verdict
//   position  locate the front from the pressure-matching criterion alone
//   linear    first approximation from the linearized theory
//   solve     full nonlinear free-boundary iteration
//
// Exit codes: 0 success, 2 bad config/usage, 3 physics/admissibility,
// 4 numerics/convergence, 1 unexpected failure.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nozzle/admissibility.hpp"
#include "nozzle/config.hpp"
#include "nozzle/errors.hpp"
#include "nozzle/iteration.hpp"
#include "nozzle/output.hpp"

namespace {

using nlohmann::json;
using namespace nozzle;

int log_level() {
  const char* env = std::getenv("TRANSONIC_LOG");
  if (!env) return 1;
  const std::string v(env);
  if (v == "quiet" || v == "0") return 0;
  if (v == "debug" || v == "2") return 2;
  return 1;
}

struct Cli {
  std::string config_path;
  std::string out_dir = "out";
  bool no_normalize = false;
  bool position_only = false;
  std::string grid_spec;
  std::optional<int> max_iter;
  std::optional<double> tol;
  std::vector<double> multi_root;
};

void apply_overrides(const Cli& cli, iteration::Params& p) {
  if (!cli.grid_spec.empty()) {
    const auto xpos = cli.grid_spec.find('x');
    if (xpos == std::string::npos) {
      throw ConfigError("--grid", "expected NxM, e.g. 129x129");
    }
    try {
      p.nx_sub = std::stoi(cli.grid_spec.substr(0, xpos));
      p.ny = std::stoi(cli.grid_spec.substr(xpos + 1));
    } catch (const std::exception&) {
      throw ConfigError("--grid", "expected NxM, e.g. 129x129");
    }
    if (p.ny < 5 || (p.nx_sub != 0 && p.nx_sub < 5)) {
      throw ConfigError("--grid", "grid sizes must be at least 5 (or 0 for the default)");
    }
  }
  if (cli.max_iter) p.max_iter = *cli.max_iter;
  if (cli.tol) p.tol = *cli.tol;
}

adm::PositionProblem position_problem(const config::Loaded& cfg) {
  adm::PositionProblem prob;
  prob.theta = &cfg.params.theta;
  prob.length = cfg.params.length;
  prob.kdot = cfg.kdot;
  prob.pe_bar = cfg.pe_bar;
  return prob;
}

json base_summary(const config::Loaded& cfg) {
  json j;
  j["sigma"] = cfg.params.sigma;
  j["length"] = cfg.params.length;
  j["gas"] = {{"gamma", cfg.params.gas.gamma}, {"cv", cfg.params.gas.cv},
              {"s0", cfg.params.gas.s0}};
  j["normalization"] = {{"a", cfg.normalization.a},
                        {"b", cfg.normalization.b},
                        {"s_shift", cfg.normalization.s_shift},
                        {"mass_flux_raw", cfg.mass_flux_raw},
                        {"enabled", cfg.normalized}};
  j["kdot"] = cfg.kdot;
  j["pe_bar"] = cfg.pe_bar;
  j["band"] = {{"lower", cfg.band_lower}, {"upper", cfg.band_upper}};
  j["admissible"] = cfg.admissible;
  return j;
}

void report_band(const config::Loaded& cfg, std::ostream& os) {
  os << "exit-pressure functional P_e = " << output::format17(cfg.pe_bar)
     << ", reachable band (R_*, R^*) = (" << output::format17(cfg.band_lower) << ", "
     << output::format17(cfg.band_upper) << ")\n";
}

// Requires an admissible exit pressure before any PDE work is attempted.
void require_admissible(const config::Loaded& cfg) {
  if (cfg.admissible) return;
  std::ostringstream msg;
  msg << "exit pressure functional " << cfg.pe_bar << " lies outside the reachable band ("
      << cfg.band_lower << ", " << cfg.band_upper << "); no front position can match it";
  throw PhysicsError("admissibility", msg.str());
}

int run_check(const config::Loaded& cfg) {
  std::cout << "config ok: gamma = " << cfg.params.gas.gamma
            << ", upstream Mach = "
            << cfg.params.gas.mach(cfg.params.upstream.q, cfg.params.upstream.p,
                                   cfg.params.upstream.rho)
            << ", sigma = " << cfg.params.sigma << ", mass flux (raw) = " << cfg.mass_flux_raw
            << "\n";
  report_band(cfg, std::cout);
  if (!cfg.admissible) {
    std::cout << "verdict: INADMISSIBLE (no front position can match the exit pressure)\n";
    require_admissible(cfg);  // throws; exit code 3
  }
  std::cout << "verdict: admissible\n";
  return 0;
}

int run_position(const config::Loaded& cfg, const Cli& cli) {
  require_admissible(cfg);
  const auto prob = position_problem(cfg);

  json summary = base_summary(cfg);
  output::ensure_dir(cli.out_dir);

  if (!cli.multi_root.empty()) {
    if (cli.multi_root.size() < 2) {
      throw ConfigError("--multi-root", "need at least two bracket endpoints");
    }
    std::vector<std::pair<double, double>> brackets;
    for (std::size_t k = 0; k + 1 < cli.multi_root.size(); ++k) {
      brackets.emplace_back(cli.multi_root[k], cli.multi_root[k + 1]);
    }
    json roots = json::array();
    for (const auto& [a, b] : brackets) {
      try {
        const auto res = adm::solve_in_bracket(prob, a, b);
        roots.push_back({{"bracket", {a, b}},
                         {"xi_star_dot", res.xi_star},
                         {"theta_at_root", res.theta_at_root}});
        std::cout << "root in [" << a << ", " << b
                  << "]: xi*_dot = " << output::format17(res.xi_star) << "\n";
      } catch (const NumericsError&) {
        std::cout << "no root in [" << a << ", " << b << "]\n";
      }
    }
    if (roots.empty()) {
      throw PhysicsError("--multi-root", "no bracket isolated a front position");
    }
    summary["roots"] = roots;
    summary["xi_star_dot"] = roots.front()["xi_star_dot"];
  } else {
    const auto res = cfg.params.position_bracket
                         ? adm::solve_in_bracket(prob, cfg.params.position_bracket->first,
                                                 cfg.params.position_bracket->second)
                         : adm::solve_shock_position(prob);
    summary["xi_star_dot"] = res.xi_star;
    summary["theta_at_root"] = res.theta_at_root;
    std::cout << "front position (linear theory): xi*_dot = "
              << output::format17(res.xi_star) << "\n";
  }
  report_band(cfg, std::cout);

  output::write_table(cli.out_dir + "/position_scan.csv", {"z", "R", "pe_bar"},
                      output::scan_rows(prob, 401));
  output::write_json(cli.out_dir + "/summary.json", summary);
  if (log_level() >= 1) std::cout << "outputs written to " << cli.out_dir << "\n";
  return 0;
}

void write_linear_tables(const iteration::Driver& driver, const iteration::Iterate& init,
                         const std::string& dir) {
  const Grid& g = driver.downstream_grid();
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(g.nx) * g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      rows.push_back({g.x(i), g.y(j), init.dtheta(i, j), init.dp(i, j), init.dq(i, j),
                      init.ds(i, j)});
    }
  }
  output::write_table(dir + "/linear_downstream.csv",
                      {"xi", "eta", "dtheta", "dp", "dq", "ds"}, rows);

  const auto& up = driver.upstream_linear();
  rows.clear();
  for (int i = 0; i < up.grid.nx; ++i) {
    for (int j = 0; j < up.grid.ny; ++j) {
      rows.push_back({up.grid.x(i), up.grid.y(j), up.theta(i, j), up.p(i, j), up.q(i, j),
                      up.s(i, j)});
    }
  }
  output::write_table(dir + "/linear_upstream.csv",
                      {"xi", "eta", "dtheta", "dp", "dq", "ds"}, rows);
}

int run_linear(const config::Loaded& cfg, const Cli& cli) {
  require_admissible(cfg);
  iteration::Driver driver(cfg.params);
  const iteration::Iterate init = driver.initial_approximation();

  output::ensure_dir(cli.out_dir);
  write_linear_tables(driver, init, cli.out_dir);
  output::write_table(cli.out_dir + "/front.csv", {"eta", "psi", "psi_prime", "z", "r"},
                      output::front_rows(driver, init));
  output::write_table(cli.out_dir + "/position_scan.csv", {"z", "R", "pe_bar"},
                      output::scan_rows(position_problem(cfg), 401));

  json summary = base_summary(cfg);
  summary["xi_star_dot"] = driver.position().xi_star;
  summary["theta_at_root"] = driver.position().theta_at_root;
  output::write_json(cli.out_dir + "/summary.json", summary);

  std::cout << "front position (linear theory): xi*_dot = "
            << output::format17(driver.position().xi_star) << "\n";
  if (log_level() >= 1) std::cout << "outputs written to " << cli.out_dir << "\n";
  return 0;
}

int run_solve(const config::Loaded& cfg, const Cli& cli) {
  require_admissible(cfg);
  iteration::Driver driver(cfg.params);

  iteration::Iterate state;
  const iteration::Report rep = driver.run(state);

  output::ensure_dir(cli.out_dir);
  output::write_table(cli.out_dir + "/downstream.csv", output::region_header(),
                      output::downstream_rows(driver, state, cfg.normalization));
  output::write_table(cli.out_dir + "/upstream.csv", output::region_header(),
                      output::upstream_rows(driver, state, cfg.normalization));
  output::write_table(cli.out_dir + "/front.csv", {"eta", "psi", "psi_prime", "z", "r"},
                      output::front_rows(driver, state));
  output::write_table(cli.out_dir + "/convergence.csv",
                      {"iter", "increment_sup", "increment_l2", "contraction"},
                      output::convergence_rows(rep));
  output::write_table(cli.out_dir + "/position_scan.csv", {"z", "R", "pe_bar"},
                      output::scan_rows(position_problem(cfg), 401));

  json summary = base_summary(cfg);
  summary["xi_star_dot"] = rep.xi_star_dot;
  summary["dxi_star"] = rep.dxi_star;
  summary["xi_star"] = rep.xi_star;
  summary["converged"] = rep.converged;
  summary["sigma_degenerate"] = rep.sigma_degenerate;
  summary["iterations"] = rep.iterations;
  summary["increment_sup"] = rep.increment_sup;
  summary["increment_l2"] = rep.increment_l2;
  summary["contraction"] = rep.contraction;
  summary["front_residual_sup"] = rep.front_residual_sup;
  summary["grid"] = {{"nx", driver.downstream_grid().nx}, {"ny", driver.downstream_grid().ny}};
  output::write_json(cli.out_dir + "/summary.json", summary);

  std::cout << "front position (linear theory): xi*_dot = "
            << output::format17(rep.xi_star_dot) << "\n";
  std::cout << "converged in " << rep.iterations
            << " iterations; front at wall xi* = " << output::format17(rep.xi_star) << "\n";
  if (log_level() >= 2) {
    for (std::size_t k = 0; k < rep.increment_sup.size(); ++k) {
      std::cerr << "  iter " << (k + 1) << ": |du|_sup = " << rep.increment_sup[k]
                << (k >= 1 ? ", ratio = " + std::to_string(rep.contraction[k - 1]) : "")
                << "\n";
    }
  }
  if (log_level() >= 1) std::cout << "outputs written to " << cli.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady transonic flow in a nearly cylindrical duct"};
  app.require_subcommand(1);

  Cli cli;
  app.add_option("--config", cli.config_path, "problem file (JSON)")->required();
  app.add_option("--out", cli.out_dir, "output directory (default: out)");
  app.add_flag("--no-normalize", cli.no_normalize,
               "keep input units internally (requires rho*q = 2 upstream)");
  app.add_option("--grid", cli.grid_spec, "grid override NxM (streamwise x cross-stream)");
  app.add_option("--max-iter", cli.max_iter, "fixed-point iteration cap");
  app.add_option("--tol", cli.tol, "fixed-point increment tolerance");
  app.add_flag("--position-only", cli.position_only,
               "stop after the front-position criterion (solve only)");
  app.add_option("--multi-root", cli.multi_root,
                 "bracket endpoints a,b,c,... for ducts with several admissible positions")
      ->delimiter(',');

  auto* sub_check = app.add_subcommand("check", "validate the problem file");
  auto* sub_position = app.add_subcommand("position", "front position from the criterion");
  auto* sub_linear = app.add_subcommand("linear", "linearized first approximation");
  auto* sub_solve = app.add_subcommand("solve", "full free-boundary iteration");
  for (auto* s : {sub_check, sub_position, sub_linear, sub_solve}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const config::Loaded cfg = [&] {
      auto loaded = config::load(cli.config_path, !cli.no_normalize);
      apply_overrides(cli, loaded.params);
      return loaded;
    }();

    if (sub_check->parsed()) return run_check(cfg);
    if (sub_position->parsed() || cli.position_only) return run_position(cfg, cli);
    if (sub_linear->parsed()) return run_linear(cfg, cli);
    return run_solve(cfg, cli);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 3;
  } catch (const NumericsError& e) {
    std::cerr << "numerics error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
