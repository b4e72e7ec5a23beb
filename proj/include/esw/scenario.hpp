#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "esw/config.hpp"
#include "esw/mlsw.hpp"
#include "esw/timeloop.hpp"

namespace esw {

/// Flat bed for BlasiusSteady/ImpulsiveStart, Gaussian bump otherwise.
Grid1D build_grid(const ScenarioConfig& config);
Grid1D build_grid(const ScenarioConfig& config, std::size_t n_cells);

/// h = h0, u_e = u0, delta1 = 0 everywhere.
ConservedState initial_state(const ScenarioConfig& config, const Grid1D& grid);

/// Inflow at x_min (sub- or supercritical per the regime), free outflow at x_max.
SolverConfig solver_config(const ScenarioConfig& config);

mlsw::MlswConfig mlsw_config(const ScenarioConfig& config);

struct ScenarioResult {
    RunState esw;
    std::optional<mlsw::MlswRun> mlsw;
    std::vector<std::filesystem::path> files;
    double wall_seconds = 0.0;
};

/// Runs the scenario and writes snapshot_t<time>.csv per snapshot time, final.csv,
/// metadata.txt and runtime.txt into `out_dir`. MlswCompare additionally writes
/// mlsw_final.csv and mlsw_profiles.csv (the ESW run uses the same grid).
ScenarioResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                            std::ostream* log = nullptr);

/// Advances from the initial state until change_rate < tol; NonSteady past max_steps.
RunState run_to_steady(const ScenarioConfig& config, const Grid1D& grid, double tol, std::size_t max_steps);

struct ConvergenceRow {
    FlowRegime regime;
    double dx;
    double error;
    double runtime_seconds;
    std::size_t steps;
    double t_final;
};

/// L1 distance between delta1 and the Blasius branch, skipping the inlet cell.
double blasius_gap(const RunState& run, const Grid1D& grid, double ue0);

/// Steady runs of the BlasiusSteady scenario for every dx in config.convergence.dx_list
/// (and the supercritical variant when requested), run concurrently.
std::vector<ConvergenceRow> convergence_study(const ScenarioConfig& config);

void write_convergence(const std::filesystem::path& path, const std::vector<ConvergenceRow>& rows);

}  // namespace esw
