#include "esw/snapshot.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "esw/errors.hpp"
#include "esw/hyperbolicity.hpp"

namespace esw {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    return os;
}

void check_written(std::ostream& os, const std::filesystem::path& path) {
    os.flush();
    if (!os) throw IoError("write to '" + path.string() + "' failed");
}

double parse_field(std::string_view s, std::size_t line) {
    double v = 0.0;
    if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw IoError("snapshot line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
    return v;
}

}  // namespace

std::string format_fixed17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

SnapshotTable snapshot_table(const ConservedState& W, const Grid1D& grid, const SolverConfig& config) {
    const StepFields fields = prepare_step(W, grid, config);
    SnapshotTable table;
    table.reserve(W.size());
    for (std::size_t j = 0; j < W.size(); ++j) {
        const CellData& c = fields.cells[j + kGhostCells];
        const double dudx = c.delta1 > 0.0 ? c.lambda1 / (c.delta1 * c.delta1) : 0.0;
        const ClosureEvaluation ev = evaluate_closure(config.params.closure, c.delta1, c.ue, dudx);
        const PrimitiveState p = to_primitive(W[j], config.params, c.H);
        table.push_back({grid.cell_centers[j], grid.topo[j], W[j].h, c.ue, c.delta1, ev.tau_bar, c.H,
                         c.f2, c.lambda1, p.U});
    }
    return table;
}

SnapshotTable snapshot_table(const mlsw::MlswState& state, const Grid1D& grid,
                             const mlsw::MlswConfig& config, GradientOrder order) {
    const std::size_t n = state.n_cells();
    std::vector<double> ue(n);
    for (std::size_t j = 0; j < n; ++j) ue[j] = state.column(j).back();
    const std::vector<double> dudx = ue_gradient(ue, grid.dx, order);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    SnapshotTable table;
    table.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto u = state.column(j);
        const double h = state.h[j];
        SnapshotRow row{grid.cell_centers[j], grid.topo[j], h, ue[j], 0.0, 0.0, nan, nan, 0.0,
                        state.mean_velocity(j, config.layers)};
        const double dbar = config.params.delta_bar;
        row.tau_b = dbar > 0.0 ? dbar * 2.0 * u[0] / (config.layers.fractions[0] * h) : 0.0;
        try {
            const mlsw::ProfileDiagnostics d = mlsw::mlsw_diagnostics(u, h, config.layers, config.params);
            row.delta1 = d.delta1;
            row.H = d.H;
            row.f2 = d.f2;
        } catch (const DegenerateProfile&) {
            if (dbar > 0.0 && std::abs(ue[j]) > config.params.u_eps) {
                double d1 = 0.0;
                for (std::size_t a = 0; a < u.size(); ++a)
                    d1 += (1.0 - u[a] / ue[j]) * config.layers.fractions[a] * h;
                row.delta1 = d1 / dbar;
            }
        }
        row.lambda1 = row.delta1 * row.delta1 * dudx[j];
        table.push_back(row);
    }
    return table;
}

void write_snapshot(std::ostream& os, const SnapshotTable& table) {
    os << kSnapshotHeader << '\n';
    for (const SnapshotRow& r : table) {
        os << format_fixed17(r.x) << ',' << format_fixed17(r.fb) << ',' << format_fixed17(r.h) << ','
           << format_fixed17(r.ue) << ',' << format_fixed17(r.delta1) << ',' << format_fixed17(r.tau_b)
           << ',' << format_fixed17(r.H) << ',' << format_fixed17(r.f2) << ','
           << format_fixed17(r.lambda1) << ',' << format_fixed17(r.U) << '\n';
    }
}

void write_snapshot(const std::filesystem::path& path, const SnapshotTable& table) {
    std::ofstream os = open_out(path);
    write_snapshot(os, table);
    check_written(os, path);
}

SnapshotTable read_snapshot(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSnapshotHeader)
        throw IoError("snapshot: missing or unexpected header");
    SnapshotTable table;
    std::size_t number = 1;
    while (std::getline(is, line)) {
        ++number;
        if (line.empty()) continue;
        double v[10];
        std::string_view rest = line;
        for (int i = 0; i < 10; ++i) {
            const auto comma = rest.find(',');
            if ((comma == std::string_view::npos) != (i == 9))
                throw IoError("snapshot line " + std::to_string(number) + ": expected 10 fields");
            v[i] = parse_field(rest.substr(0, comma), number);
            if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
        }
        table.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]});
    }
    return table;
}

SnapshotTable read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path.string() + "'");
    return read_snapshot(is);
}

void write_profiles(const std::filesystem::path& path, const mlsw::MlswState& state,
                    const Grid1D& grid, const mlsw::LayerGrid& layers) {
    std::ofstream os = open_out(path);
    os << "x,layer_index,z_mid,u\n";
    for (std::size_t j = 0; j < state.n_cells(); ++j) {
        const double h = state.h[j];
        for (std::size_t a = 0; a < state.n_layers(); ++a) {
            const double z = grid.topo[j] + h * 0.5 * (layers.levels[a] + layers.levels[a + 1]);
            os << format_fixed17(grid.cell_centers[j]) << ',' << a << ',' << format_fixed17(z) << ','
               << format_fixed17(state.u(j, a)) << '\n';
        }
    }
    check_written(os, path);
}

void write_hyperbolicity_map(std::ostream& os, const SnapshotTable& table, const PhysicalParams& params) {
    os << "x,lam1_0,lam2_0,lam3_0,lam_L,lam_R,n_real,root1,root2,root3,hyperbolic,margin\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const SnapshotRow& r : table) {
        const WaveSpeeds ws = analyze_wave_speeds(params.closure, r.h, r.ue, r.delta1 * r.ue, r.lambda1,
                                                  params.froude, params.delta_bar);
        os << format_fixed17(r.x) << ',' << format_fixed17(ws.lam1_0) << ',' << format_fixed17(ws.lam2_0)
           << ',' << format_fixed17(ws.lam3_0) << ',' << format_fixed17(ws.lam_L) << ','
           << format_fixed17(ws.lam_R) << ',' << ws.full.n_real;
        for (int i = 0; i < 3; ++i) os << ',' << format_fixed17(i < ws.full.n_real ? ws.full.roots[i] : nan);
        os << ',' << (ws.full.hyperbolic ? 1 : 0) << ',' << format_fixed17(ws.full.margin) << '\n';
    }
}

void write_key_values(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream os = open_out(path);
    for (const auto& [k, v] : entries) os << k << '=' << v << '\n';
    check_written(os, path);
}

}  // namespace esw
