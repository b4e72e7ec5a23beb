#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esw/closures.hpp"
#include "esw/state.hpp"

namespace esw {

enum class ScenarioKind { BlasiusSteady, ImpulsiveStart, Bump, MlswCompare };
enum class FlowRegime { Subcritical, Supercritical };
enum class OutflowKind { Free, FarField };

std::string scenario_name(ScenarioKind kind);
std::string regime_name(FlowRegime regime);
std::string outflow_name(OutflowKind kind);

struct BumpShape {
    double alpha = 0.01;
    double sigma = 0.1;
    double center = 1.0;
};

struct ConvergenceOptions {
    std::vector<double> dx_list{1e-2, 1e-3, 1e-4};
    /// Steady once the relative change per unit time drops below this.
    double steady_tol = 1e-8;
    std::size_t max_steps = 2'000'000;
    bool include_supercritical = false;
    /// With free outflow a subcritical run keeps drifting at O(delta_bar) and
    /// never meets steady_tol; the far-field outlet removes that neutral mode.
    OutflowKind outflow = OutflowKind::FarField;
};

struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::BlasiusSteady;
    PhysicalParams params;
    double x_min = 0.0;
    double x_max = 0.1;
    std::size_t n_cells = 1000;
    FlowRegime regime = FlowRegime::Subcritical;
    /// Far-field state for OutflowKind::FarField is (h0, u0).
    OutflowKind outflow = OutflowKind::Free;
    double h0 = 2.0;
    double u0 = 1.0;
    BumpShape bump;
    double t_end = 2.0;
    std::vector<double> snapshot_times;
    GradientOrder gradient_order = GradientOrder::Fourth;
    double cfl_number = 0.9;
    double dt_max = 1e-2;
    std::size_t mlsw_layers = 100;
    ConvergenceOptions convergence;
    std::string output_dir = ".";

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Defaults for a scenario before any key is applied.
ScenarioConfig scenario_defaults(ScenarioKind kind);

/// Parses `key=value` lines ('#' starts a comment). The `scenario` key, if present,
/// selects the defaults; remaining keys then apply in file order, followed by
/// `overrides` (also `key=value`). Errors carry the key and, for file lines, the line number.
ScenarioConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// Every config field as a key/value pair, in a fixed order. Feeding the result
/// back through parse_config reproduces the config.
std::vector<std::pair<std::string, std::string>> config_entries(const ScenarioConfig& config);

/// Shortest round-trip decimal representation, locale independent.
std::string format_double(double v);

}  // namespace esw
