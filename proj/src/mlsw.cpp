#include "esw/mlsw.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "esw/errors.hpp"

namespace esw::mlsw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Column {
    double h;
    double fb;
    std::span<const double> u;
};

}  // namespace

LayerGrid LayerGrid::exponential(std::size_t n_layers, double stretch) {
    if (n_layers == 0) throw DomainError("LayerGrid: need at least one layer");
    if (!(stretch > 0.0)) throw DomainError("LayerGrid: stretch must be positive");
    LayerGrid g;
    g.levels.resize(n_layers + 1);
    const double denom = std::expm1(stretch);
    for (std::size_t a = 0; a <= n_layers; ++a)
        g.levels[a] = std::expm1(stretch * static_cast<double>(a) / static_cast<double>(n_layers)) / denom;
    g.levels.back() = 1.0;
    g.fractions.resize(n_layers);
    for (std::size_t a = 0; a < n_layers; ++a) g.fractions[a] = g.levels[a + 1] - g.levels[a];
    return g;
}

LayerGrid LayerGrid::uniform(std::size_t n_layers) {
    if (n_layers == 0) throw DomainError("LayerGrid: need at least one layer");
    return from_fractions(std::vector<double>(n_layers, 1.0 / static_cast<double>(n_layers)));
}

LayerGrid LayerGrid::from_fractions(std::vector<double> fractions) {
    if (fractions.empty()) throw DomainError("LayerGrid: need at least one layer");
    for (double l : fractions)
        if (!(l > 0.0)) throw DomainError("LayerGrid: fractions must be positive");
    const double total = std::accumulate(fractions.begin(), fractions.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("LayerGrid: fractions must sum to one");
    LayerGrid g;
    g.fractions = std::move(fractions);
    g.levels.assign(g.fractions.size() + 1, 0.0);
    for (std::size_t a = 0; a < g.fractions.size(); ++a) g.levels[a + 1] = g.levels[a] + g.fractions[a];
    g.levels.back() = 1.0;
    return g;
}

MlswState::MlswState(std::size_t n_cells, std::size_t n_layers)
    : h(n_cells, 0.0), n_layers_(n_layers), u_(n_cells * n_layers, 0.0) {}

double MlswState::mean_velocity(std::size_t cell, const LayerGrid& layers) const {
    double s = 0.0;
    for (std::size_t a = 0; a < n_layers_; ++a) s += layers.fractions[a] * u(cell, a);
    return s;
}

MlswState uniform_state(std::size_t n_cells, const LayerGrid& layers, double h0, double u0) {
    MlswState s(n_cells, layers.size());
    std::fill(s.h.begin(), s.h.end(), h0);
    for (std::size_t j = 0; j < n_cells; ++j)
        for (std::size_t a = 0; a < layers.size(); ++a) s.u(j, a) = u0;
    return s;
}

double mlsw_dt(const MlswState& state, double dx, double cfl_number, double froude, double dt_max) {
    if (!(cfl_number > 0.0 && cfl_number <= 1.0)) throw DomainError("cfl_number must lie in (0, 1]");
    double smax = 0.0;
    for (std::size_t j = 0; j < state.n_cells(); ++j) {
        double umax = 0.0;
        for (double u : state.column(j)) umax = std::max(umax, std::abs(u));
        smax = std::max(smax, umax + std::sqrt(state.h[j]) / froude);
    }
    return smax > 0.0 ? std::min(dt_max, cfl_number * dx / (2.0 * smax)) : dt_max;
}

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n)
        throw TridiagonalFailure("solve_tridiagonal: size mismatch");
    std::vector<double> c(n);
    double pivot = diag[0];
    if (pivot == 0.0 || !std::isfinite(pivot)) throw TridiagonalFailure("solve_tridiagonal: zero pivot");
    c[0] = upper[0] / pivot;
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i] * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot))
            throw TridiagonalFailure("solve_tridiagonal: zero pivot");
        c[i] = upper[i] / pivot;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

double vertical_friction(std::span<double> u, double h, const LayerGrid& layers, double delta_bar,
                         double dt) {
    const std::size_t n = u.size();
    const double nu = delta_bar * delta_bar;
    // kappa[i] couples layers i and i + 1; kappa[n - 1] is the free surface (stress free).
    std::vector<double> kappa(n, 0.0);
    for (std::size_t a = 0; a + 1 < n; ++a)
        kappa[a] = nu * 2.0 / (h * (layers.fractions[a + 1] + layers.fractions[a]));
    const double kappa_bed = nu * 2.0 / (h * layers.fractions[0]);

    std::vector<double> lower(n, 0.0), diag(n), upper(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        const double below = a == 0 ? kappa_bed : kappa[a - 1];
        diag[a] = h * layers.fractions[a] + dt * (below + kappa[a]);
        if (a > 0) lower[a] = -dt * kappa[a - 1];
        if (a + 1 < n) upper[a] = -dt * kappa[a];
        u[a] *= h * layers.fractions[a];
    }
    solve_tridiagonal(lower, diag, upper, u);
    return kappa_bed * u[0];
}

MlswState mlsw_step(const MlswState& state, double dt, const Grid1D& grid, const MlswConfig& config) {
    const std::size_t n = state.n_cells();
    const std::size_t N = state.n_layers();
    const LayerGrid& layers = config.layers;
    const PhysicalParams& params = config.params;
    if (n != grid.n_cells) throw MismatchedGrids("mlsw_step: state and grid sizes differ");
    if (layers.size() != N) throw MismatchedGrids("mlsw_step: layer grid and state differ");
    const double g = 1.0 / (params.froude * params.froude);

    // One ghost column per side.
    std::vector<double> inflow_u(N), outflow_u(N);
    double inflow_h = 0.0;
    std::visit(overloaded{
                   [&](const SubcriticalInflow& b) {
                       const double u1 = state.mean_velocity(0, layers);
                       const double root = std::sqrt(state.h[0]) + params.froude * (b.u_in - u1) / 2.0;
                       inflow_h = root > 0.0 ? root * root : params.h_dry;
                       std::fill(inflow_u.begin(), inflow_u.end(), b.u_in);
                   },
                   [&](const SupercriticalInflow& b) {
                       inflow_h = b.h_in;
                       std::fill(inflow_u.begin(), inflow_u.end(), b.u_in);
                   },
               },
               config.boundaries.left);
    const auto last = state.column(n - 1);
    std::copy(last.begin(), last.end(), outflow_u.begin());
    double outflow_h = state.h.back();
    if (const auto* far = std::get_if<FarFieldOutflow>(&config.boundaries.right)) {
        const double un = state.mean_velocity(n - 1, layers);
        const double cn = std::sqrt(outflow_h) / params.froude;
        if (un < cn) {
            const double out = un + 2.0 * cn;
            const double in = far->u_far - 2.0 * std::sqrt(far->h_far) / params.froude;
            const double c = 0.25 * (out - in);
            const double shift = 0.5 * (out + in) - un;
            for (double& u : outflow_u) u += shift;
            outflow_h = params.froude * params.froude * c * c;
        }
    }

    auto column = [&](std::ptrdiff_t k) -> Column {
        if (k < 0) return {inflow_h, grid.topo.front(), inflow_u};
        if (k >= static_cast<std::ptrdiff_t>(n)) return {outflow_h, grid.topo.back(), outflow_u};
        const auto j = static_cast<std::size_t>(k);
        return {state.h[j], grid.topo[j], state.column(j)};
    };

    // Interface i sits between columns i - 1 and i, i = 0..n.
    std::vector<double> mass((n + 1) * N), mom_left((n + 1) * N), mom_right((n + 1) * N);
    for (std::size_t i = 0; i <= n; ++i) {
        const Column L = column(static_cast<std::ptrdiff_t>(i) - 1);
        const Column R = column(static_cast<std::ptrdiff_t>(i));
        const double zstar = std::max(L.fb, R.fb);
        const double hL = std::max(0.0, L.h + L.fb - zstar);
        const double hR = std::max(0.0, R.h + R.fb - zstar);
        double s = 0.0;
        for (std::size_t a = 0; a < N; ++a)
            s = std::max({s, std::abs(L.u[a]), std::abs(R.u[a])});
        s += std::sqrt(std::max(L.h, R.h) * g);
        for (std::size_t a = 0; a < N; ++a) {
            const double l = layers.fractions[a];
            const double qL = hL * L.u[a];
            const double qR = hR * R.u[a];
            const double fL = qL * L.u[a] + g * hL * hL / 2.0;
            const double fR = qR * R.u[a] + g * hR * hR / 2.0;
            const double F = l * (0.5 * (fL + fR) - 0.5 * s * (qR - qL));
            mass[i * N + a] = l * (0.5 * (qL + qR) - 0.5 * s * (hR - hL));
            mom_left[i * N + a] = F + l * g * (L.h * L.h - hL * hL) / 2.0;
            mom_right[i * N + a] = F + l * g * (R.h * R.h - hR * hR) / 2.0;
        }
    }

    MlswState next(n, N);
    const double ratio = dt / grid.dx;
    std::vector<double> D(N), G(N + 1), mom(N);
    for (std::size_t j = 0; j < n; ++j) {
        double Dsum = 0.0;
        for (std::size_t a = 0; a < N; ++a) {
            D[a] = (mass[(j + 1) * N + a] - mass[j * N + a]) / grid.dx;
            Dsum += D[a];
        }
        const double h_new = state.h[j] - dt * Dsum;
        if (!(h_new > params.h_dry)) throw DryCell(j, h_new);
        next.h[j] = h_new;

        // G[a] is the exchange through the top of layer a - 1 (G[0] = G[N] = 0).
        G[0] = 0.0;
        for (std::size_t a = 0; a < N; ++a) G[a + 1] = G[a] + D[a] - layers.fractions[a] * Dsum;
        G[N] = 0.0;

        const auto u = state.column(j);
        for (std::size_t a = 0; a < N; ++a) {
            const double l = layers.fractions[a];
            double m = l * state.h[j] * u[a] - ratio * (mom_left[(j + 1) * N + a] - mom_right[j * N + a]);
            if (a + 1 < N) {
                const double ui = G[a + 1] > 0.0 ? u[a + 1] : u[a];
                m += dt * ui * G[a + 1];
            }
            if (a > 0) {
                const double ui = G[a] > 0.0 ? u[a] : u[a - 1];
                m -= dt * ui * G[a];
            }
            mom[a] = m;
        }
        auto unew = next.column(j);
        for (std::size_t a = 0; a < N; ++a) unew[a] = mom[a] / (layers.fractions[a] * h_new);
        if (params.delta_bar > 0.0) vertical_friction(unew, h_new, layers, params.delta_bar, dt);
    }
    return next;
}

ProfileDiagnostics mlsw_diagnostics(std::span<const double> u, double h, const LayerGrid& layers,
                                    const PhysicalParams& params) {
    if (u.size() != layers.size()) throw MismatchedGrids("mlsw_diagnostics: layer count mismatch");
    const double ue = u.back();
    if (!(std::abs(ue) > params.u_eps)) throw DegenerateProfile("mlsw_diagnostics: top-layer velocity vanishes");
    if (!(params.delta_bar > 0.0)) throw DegenerateProfile("mlsw_diagnostics: delta_bar must be positive");
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t a = 0; a < u.size(); ++a) {
        const double ha = layers.fractions[a] * h;
        const double ratio = u[a] / ue;
        d1 += (1.0 - ratio) * ha;
        d2 += ratio * (1.0 - ratio) * ha;
    }
    d1 /= params.delta_bar;
    d2 /= params.delta_bar;
    if (!(d2 > 0.0)) throw DegenerateProfile("mlsw_diagnostics: momentum thickness is not positive");
    const double H = d1 / d2;
    const double tau = params.delta_bar * 2.0 * u[0] / (layers.fractions[0] * h);
    return {ue, d1, d2, H, tau * d1 / (H * ue), tau};
}

MlswRun advance(MlswRun run, const Grid1D& grid, const MlswConfig& config, double t_end,
                const std::vector<double>& snapshot_times,
                const std::function<void(const MlswRun&)>& on_snapshot) {
    if (t_end < run.t) throw DomainError("advance: t_end precedes the current time");
    std::vector<double> snaps = snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    auto next_snap = std::lower_bound(snaps.begin(), snaps.end(), run.t);
    auto fire = [&] {
        while (next_snap != snaps.end() && *next_snap <= run.t) {
            if (on_snapshot) on_snapshot(run);
            ++next_snap;
        }
    };
    fire();
    while (run.t < t_end) {
        double dt = mlsw_dt(run.state, grid.dx, config.cfl_number, config.params.froude, config.dt_max);
        double target = t_end;
        if (next_snap != snaps.end()) target = std::min(target, *next_snap);
        const bool hit = run.t + dt >= target;
        if (hit) dt = target - run.t;
        run.state = mlsw_step(run.state, dt, grid, config);
        run.t = hit ? target : run.t + dt;
        ++run.step_count;
        fire();
    }
    return run;
}

}  // namespace esw::mlsw
