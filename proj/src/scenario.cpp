#include "esw/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>

#include "esw/analytic.hpp"
#include "esw/errors.hpp"
#include "esw/snapshot.hpp"

#ifndef ESW_VERSION
#define ESW_VERSION "unknown"
#endif

namespace esw {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool has_bump(ScenarioKind kind) {
    return kind == ScenarioKind::Bump || kind == ScenarioKind::MlswCompare;
}

std::filesystem::path snapshot_name(double t) { return "snapshot_t" + format_double(t) + ".csv"; }

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

Grid1D build_grid(const ScenarioConfig& config) { return build_grid(config, config.n_cells); }

Grid1D build_grid(const ScenarioConfig& config, std::size_t n_cells) {
    if (!has_bump(config.scenario)) return Grid1D::uniform(config.x_min, config.x_max, n_cells);
    const BumpShape b = config.bump;
    return Grid1D::uniform(config.x_min, config.x_max, n_cells, [b](double x) {
        return analytic::gaussian_bump(x, b.alpha, b.sigma, b.center);
    });
}

ConservedState initial_state(const ScenarioConfig& config, const Grid1D& grid) {
    return ConservedState(grid.n_cells, from_primitive(config.h0, config.u0, 0.0));
}

SolverConfig solver_config(const ScenarioConfig& config) {
    SolverConfig s;
    s.params = config.params;
    if (config.regime == FlowRegime::Subcritical)
        s.boundaries.left = SubcriticalInflow{config.u0};
    else
        s.boundaries.left = SupercriticalInflow{config.u0, config.h0};
    if (config.outflow == OutflowKind::FarField)
        s.boundaries.right = FarFieldOutflow{config.h0, config.u0};
    else
        s.boundaries.right = FreeOutflow{};
    s.gradient_order = config.gradient_order;
    s.cfl_number = config.cfl_number;
    s.dt_max = config.dt_max;
    return s;
}

mlsw::MlswConfig mlsw_config(const ScenarioConfig& config) {
    mlsw::MlswConfig m;
    const SolverConfig s = solver_config(config);
    m.params = s.params;
    m.boundaries = s.boundaries;
    m.layers = mlsw::LayerGrid::exponential(config.mlsw_layers);
    m.cfl_number = config.cfl_number;
    m.dt_max = config.dt_max;
    return m;
}

ScenarioResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                            std::ostream* log) {
    config.validate();
    ensure_dir(out_dir);
    const auto start = Clock::now();
    ScenarioResult result;

    write_key_values(out_dir / "metadata.txt", [&] {
        auto entries = config_entries(config);
        entries.emplace_back("code_version", ESW_VERSION);
        return entries;
    }());
    result.files.push_back(out_dir / "metadata.txt");

    const Grid1D grid = build_grid(config);
    SolverConfig solver = solver_config(config);
    solver.log = log;
    solver.log_every = log ? 1000 : 0;

    RunState run;
    run.W = initial_state(config, grid);
    AdvanceCallbacks callbacks;
    callbacks.snapshot_times = config.snapshot_times;
    callbacks.on_snapshot = [&](const RunState& s) {
        const auto path = out_dir / snapshot_name(s.t);
        write_snapshot(path, snapshot_table(s.W, grid, solver));
        result.files.push_back(path);
    };
    result.esw = advance(std::move(run), grid, solver, config.t_end, callbacks);
    write_snapshot(out_dir / "final.csv", snapshot_table(result.esw.W, grid, solver));
    result.files.push_back(out_dir / "final.csv");

    if (config.scenario == ScenarioKind::MlswCompare) {
        const mlsw::MlswConfig mc = mlsw_config(config);
        mlsw::MlswRun mrun;
        mrun.state = mlsw::uniform_state(grid.n_cells, mc.layers, config.h0, config.u0);
        result.mlsw = mlsw::advance(std::move(mrun), grid, mc, config.t_end);
        write_snapshot(out_dir / "mlsw_final.csv",
                       snapshot_table(result.mlsw->state, grid, mc, config.gradient_order));
        write_profiles(out_dir / "mlsw_profiles.csv", result.mlsw->state, grid, mc.layers);
        result.files.push_back(out_dir / "mlsw_final.csv");
        result.files.push_back(out_dir / "mlsw_profiles.csv");
    }

    // Timing lives apart from metadata.txt so the latter stays byte-reproducible.
    result.wall_seconds = seconds_since(start);
    write_key_values(out_dir / "runtime.txt", {{"wall_seconds", format_double(result.wall_seconds)},
                                               {"steps", std::to_string(result.esw.step_count)}});
    result.files.push_back(out_dir / "runtime.txt");
    return result;
}

RunState run_to_steady(const ScenarioConfig& config, const Grid1D& grid, double tol,
                       std::size_t max_steps) {
    const SolverConfig solver = solver_config(config);
    RunState run;
    run.W = initial_state(config, grid);
    bool steady = false;
    AdvanceCallbacks callbacks;
    callbacks.on_step = [&](const RunState& s) {
        steady = s.diag.change_rate < tol;
        return !steady && s.step_count < max_steps;
    };
    run = advance(std::move(run), grid, solver, std::numeric_limits<double>::infinity(), callbacks);
    if (!steady)
        throw NonSteady("no steady state after " + std::to_string(run.step_count) +
                        " steps (change rate " + format_double(run.diag.change_rate) + ")");
    return run;
}

double blasius_gap(const RunState& run, const Grid1D& grid, double ue0) {
    constexpr double H = BlasiusConstant::shape_factor;
    constexpr double f2 = BlasiusConstant::friction_factor;
    analytic::ReferenceCurve numeric{grid.cell_centers, {}, "esw"};
    analytic::ReferenceCurve reference{grid.cell_centers, {}, "blasius"};
    for (std::size_t j = 0; j < grid.n_cells; ++j) {
        const Conserved& w = run.W[j];
        numeric.values.push_back(w.r / (w.q / w.h));
        reference.values.push_back(analytic::blasius_steady(grid.cell_centers[j], ue0, f2 * H, H).delta1);
    }
    return analytic::l1_error(numeric, reference, grid.dx);
}

std::vector<ConvergenceRow> convergence_study(const ScenarioConfig& config) {
    config.validate();
    if (config.scenario != ScenarioKind::BlasiusSteady)
        throw ConfigError("scenario", "convergence studies need the blasius_steady scenario");

    std::vector<ScenarioConfig> variants{config};
    if (config.convergence.include_supercritical && config.regime == FlowRegime::Subcritical) {
        ScenarioConfig sup = config;
        sup.regime = FlowRegime::Supercritical;
        sup.h0 = 0.5;
        variants.push_back(sup);
    }
    for (ScenarioConfig& v : variants) v.outflow = config.convergence.outflow;

    std::vector<std::future<ConvergenceRow>> jobs;
    for (const ScenarioConfig& v : variants) {
        for (double dx : config.convergence.dx_list) {
            jobs.push_back(std::async(std::launch::async, [v, dx] {
                const auto start = Clock::now();
                const auto n = static_cast<std::size_t>(std::llround((v.x_max - v.x_min) / dx));
                const Grid1D grid = build_grid(v, n);
                const RunState run =
                    run_to_steady(v, grid, v.convergence.steady_tol, v.convergence.max_steps);
                return ConvergenceRow{v.regime, dx, blasius_gap(run, grid, v.u0), seconds_since(start),
                                      run.step_count, run.t};
            }));
        }
    }
    std::vector<ConvergenceRow> rows;
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

void write_convergence(const std::filesystem::path& path, const std::vector<ConvergenceRow>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << "regime,dx,error,runtime_s,steps,t_final\n";
    for (const ConvergenceRow& r : rows)
        os << regime_name(r.regime) << ',' << format_fixed17(r.dx) << ',' << format_fixed17(r.error) << ','
           << format_fixed17(r.runtime_seconds) << ',' << r.steps << ',' << format_fixed17(r.t_final) << '\n';
    os.flush();
    if (!os) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace esw
