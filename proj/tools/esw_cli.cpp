// Command-line front end: run, converge, mlsw, analyze.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "esw/config.hpp"
#include "esw/errors.hpp"
#include "esw/scenario.hpp"
#include "esw/snapshot.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

std::string slurp(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw esw::IoError("cannot read config '" + path.string() + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

esw::ScenarioConfig load(const std::string& config_path, std::vector<std::string> sets,
                         const std::string& out, const char* forced_scenario = nullptr) {
    const std::string text = config_path.empty() ? std::string() : slurp(config_path);
    if (forced_scenario) sets.insert(sets.begin(), std::string("scenario=") + forced_scenario);
    if (!out.empty()) sets.push_back("output.dir=" + out);
    return esw::parse_config(text, sets);
}

void print_summary(const esw::RunState& run) {
    const auto& d = run.diag;
    std::cout << "t=" << run.t << " steps=" << run.step_count << " non_hyperbolic=" << d.non_hyperbolic_cells
              << " star_fallbacks=" << d.star_fallbacks << " min_f2=" << d.min_f2
              << " max_speed=" << d.max_abs_lambda << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extended shallow water solver with a viscous boundary layer"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::vector<std::string> sets;
    bool verbose = false;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("--config", config_path, "key=value scenario file");
        if (config_required) opt->required();
        cmd->add_option("--set", sets, "override, key=value (repeatable)");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_flag("-v,--verbose", verbose, "progress log on stderr");
    };

    auto* run_cmd = app.add_subcommand("run", "run a scenario and write snapshots");
    add_common(run_cmd, true);
    auto* conv_cmd = app.add_subcommand("converge", "steady-state mesh convergence study");
    add_common(conv_cmd, true);
    auto* mlsw_cmd = app.add_subcommand("mlsw", "bump run with the multilayer reference solver");
    add_common(mlsw_cmd, false);

    auto* analyze_cmd = app.add_subcommand("analyze", "hyperbolicity map of a snapshot file");
    std::string snapshot_path;
    analyze_cmd->add_option("snapshot", snapshot_path, "snapshot CSV")->required();
    analyze_cmd->add_option("--config", config_path, "physical parameters and closure");
    analyze_cmd->add_option("--set", sets, "override, key=value (repeatable)");
    analyze_cmd->add_option("--out", out_dir, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*analyze_cmd) {
            const esw::ScenarioConfig cfg = load(config_path, sets, "");
            const esw::SnapshotTable table = esw::read_snapshot(fs::path(snapshot_path));
            if (out_dir.empty()) {
                esw::write_hyperbolicity_map(std::cout, table, cfg.params);
            } else {
                std::ofstream os(out_dir, std::ios::binary);
                if (!os) throw esw::IoError("cannot open '" + out_dir + "' for writing");
                esw::write_hyperbolicity_map(os, table, cfg.params);
                if (!os.flush()) throw esw::IoError("write to '" + out_dir + "' failed");
            }
            return kOk;
        }

        const char* forced = *mlsw_cmd ? "mlsw_compare" : nullptr;
        const esw::ScenarioConfig cfg = load(config_path, sets, out_dir, forced);
        const fs::path out = cfg.output_dir;

        if (*conv_cmd) {
            fs::create_directories(out);
            const auto rows = esw::convergence_study(cfg);
            esw::write_convergence(out / "convergence.csv", rows);
            for (const auto& r : rows)
                std::cout << esw::regime_name(r.regime) << " dx=" << r.dx << " error=" << r.error
                          << " steps=" << r.steps << " runtime=" << r.runtime_seconds << "s\n";
            return kOk;
        }

        const esw::ScenarioResult res = esw::run_scenario(cfg, out, verbose ? &std::cerr : nullptr);
        print_summary(res.esw);
        if (res.mlsw) std::cout << "mlsw t=" << res.mlsw->t << " steps=" << res.mlsw->step_count << '\n';
        for (const auto& f : res.files) std::cout << "wrote " << f.string() << '\n';
        return kOk;
    } catch (const esw::ConfigError& e) {
        std::cerr << "config error [" << e.key() << "]: " << e.what() << '\n';
        return kConfig;
    } catch (const esw::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIo;
    } catch (const esw::NumericalFailure& e) {
        std::cerr << "numerical failure at t=" << e.last_state().t << ": " << e.what() << '\n';
        return kNumerical;
    } catch (const esw::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
}
