#ifndef NOZZLE_OUTPUT_HPP_
#define NOZZLE_OUTPUT_HPP_

#include <string>
#include <vector>

#include "json.hpp"

#include "nozzle/admissibility.hpp"
#include "nozzle/gas.hpp"
#include "nozzle/iteration.hpp"

namespace nozzle::output {

// All writers are deterministic: numbers are printed with 17 significant
// digits (round-trip exact for IEEE doubles) and nothing time- or
// environment-dependent is emitted, so repeated runs produce byte-identical
// files.

std::string format17(double v);

void ensure_dir(const std::string& dir);
void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);
void write_json(const std::string& path, const nlohmann::json& doc);

// Column layout shared by the two region tables:
// z, r, xi, eta, theta, p, q, s, rho, mach.  Coordinates and (theta, p, mach)
// are normalization-invariant; q, s, rho are reported in the input units.
const std::vector<std::string>& region_header();

std::vector<std::vector<double>> downstream_rows(const iteration::Driver& d,
                                                 const iteration::Iterate& it,
                                                 const gas::Normalization& norm);
std::vector<std::vector<double>> upstream_rows(const iteration::Driver& d,
                                               const iteration::Iterate& it,
                                               const gas::Normalization& norm);

// Front curve: eta, psi, psi_prime, z, r.
std::vector<std::vector<double>> front_rows(const iteration::Driver& d,
                                            const iteration::Iterate& it);

// Position criterion scan: z, R(z), pe_bar (constant column for plotting).
std::vector<std::vector<double>> scan_rows(const adm::PositionProblem& prob, int samples);

// Fixed-point history: iter, increment_sup, increment_l2, contraction.
std::vector<std::vector<double>> convergence_rows(const iteration::Report& rep);

}  // namespace nozzle::output

#endif  // NOZZLE_OUTPUT_HPP_
