// commands.hpp — Subcommand implementations behind the qbm executable

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qbm/run_config.hpp"

namespace qbm::cli {

// Exit codes of the executable.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidArgs = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

// Each command writes to cfg.out (or `fallback` when cfg.out is empty and the command
// supports streaming). Returns the list of files written.

// CSV columns: tau,delta,gamma,big_gamma,delta_gamma (n_steps rows on [0, tau_max]).
std::vector<std::string> cmd_coeffs(const RunConfig& cfg, std::ostream& fallback);

// CSV columns: tau,n_mean,var_x,var_y,cov_xy,mean_x,mean_y, plus a JSON summary with the
// squeezing intervals and oscillation period (<out>.summary.json for CSV output).
std::vector<std::string> cmd_moments(const RunConfig& cfg, std::ostream& fallback);

// One grid file per tau in cfg.taus: <out>_tau<tau>.<csv|json>. cfg.out is a path prefix
// and defaults to "wigner".
std::vector<std::string> cmd_wigner(const RunConfig& cfg);

// JSON classification record of Delta +/- gamma on [0, tau_max].
std::vector<std::string> cmd_classify(const RunConfig& cfg, std::ostream& fallback);

// Grid file body. CSV: "# x_min,x_max,y_min,y_max,nx,ny" filled with values, then ny rows
// (increasing alpha_y) of nx values (increasing alpha_x).
void write_grid_csv(const WignerGrid& grid, std::ostream& os);
nlohmann::json grid_to_json(const WignerGrid& grid, double tau);

// Inverse of write_grid_csv, used by tests and downstream tools.
WignerGrid read_grid_csv(std::istream& is);

}  // namespace qbm::cli
