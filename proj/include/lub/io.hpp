#pragma once

#include "lub/config.hpp"
#include "lub/coupling.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace lub {

/// Shortest round-trip scientific decimal representation.
std::string format_double(double v);

/// Grid specification for cmd_sweep: the cross product of alpha and h0/R
/// values, each cell run for every configured variant.
struct SweepGrid {
    std::vector<double> alpha;
    std::vector<double> h0_over_R;
};

SweepGrid load_grid(const std::string& path);

/// Runs one variant and writes pressure.csv, viscosity.csv, velocity.csv
/// (modified variant only), convergence.csv and report.json into
/// out_dir/<variant>/. Returns the process exit code: 0 success, 2 solver
/// non-convergence, 3 ellipticity loss.
int cmd_solve(const RunConfig& cfg, ModelVariant variant, const std::string& out_dir);

/// Runs every configured variant (at least two), writes per-variant artifacts
/// plus comparison.csv and comparison_report.json. Exit code is the maximum
/// of the per-variant codes.
int cmd_compare(const RunConfig& cfg, const std::string& out_dir);

/// Runs the alpha x h0/R grid; failed cells are flagged in sweep.csv, not
/// fatal. Only I/O errors abort the sweep.
int cmd_sweep(const RunConfig& cfg, const SweepGrid& grid, const std::string& out_dir);

} // namespace lub
