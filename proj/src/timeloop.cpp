#include "esw/timeloop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "esw/hyperbolicity.hpp"

namespace esw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double max_abs_speed(const std::vector<CellData>& cells) {
    double m = 0.0;
    for (const CellData& c : cells) m = std::max({m, std::abs(c.lam_L), std::abs(c.lam_R)});
    return m;
}

}  // namespace

NumericalFailure::NumericalFailure(const std::string& what, RunState last)
    : Error(what), last_(std::move(last)) {}

GhostCells apply_boundaries(const ConservedState& interior, const BoundarySpec& spec,
                            const PhysicalParams& params) {
    if (interior.size() < 2) throw DomainError("apply_boundaries needs at least two interior cells");
    GhostCells g;

    const Conserved inflow = std::visit(
        overloaded{
            [&](const SubcriticalInflow& b) {
                // The 1-characteristic leaves through the inlet: u - 2 sqrt(h)/Fr is
                // carried from the first interior cell.
                const Conserved& w1 = interior.front();
                const double u1 = w1.q / w1.h;
                const double root = std::sqrt(w1.h) + params.froude * (b.u_in - u1) / 2.0;
                double h = root * root;
                if (!(root > 0.0)) {
                    g.invalid_invariant = true;
                    h = params.h_dry;
                }
                return from_primitive(h, b.u_in, 0.0);
            },
            [](const SupercriticalInflow& b) { return from_primitive(b.h_in, b.u_in, 0.0); },
        },
        spec.left);
    g.left.fill(inflow);

    std::visit(overloaded{
                   [&](const FreeOutflow&) { g.right.fill(interior.back()); },
                   [&](const FarFieldOutflow& b) {
                       const Conserved& wn = interior.back();
                       const double un = wn.q / wn.h;
                       const double cn = std::sqrt(wn.h) / params.froude;
                       if (un >= cn) {
                           g.right.fill(wn);
                           return;
                       }
                       const double out = un + 2.0 * cn;
                       const double in = b.u_far - 2.0 * std::sqrt(b.h_far) / params.froude;
                       const double u = 0.5 * (out + in);
                       const double c = 0.25 * (out - in);
                       const double d1 = std::abs(un) > params.u_eps ? wn.r / un : 0.0;
                       g.right.fill(from_primitive(params.froude * params.froude * c * c, u, d1));
                   },
               },
               spec.right);
    return g;
}

StepFields prepare_step(const ConservedState& interior, const Grid1D& grid,
                        const SolverConfig& config) {
    const std::size_t n = interior.size();
    StepFields f;
    f.ghosts = apply_boundaries(interior, config.boundaries, config.params);

    std::vector<Conserved> ext;
    ext.reserve(n + 2 * kGhostCells);
    ext.insert(ext.end(), f.ghosts.left.begin(), f.ghosts.left.end());
    ext.insert(ext.end(), interior.begin(), interior.end());
    ext.insert(ext.end(), f.ghosts.right.begin(), f.ghosts.right.end());

    f.topo.resize(ext.size());
    for (std::size_t k = 0; k < ext.size(); ++k) {
        const std::size_t j = std::clamp<std::size_t>(k, kGhostCells, n + kGhostCells - 1) - kGhostCells;
        f.topo[k] = grid.topo[j];
    }

    std::vector<double> ue(ext.size());
    for (std::size_t k = 0; k < ext.size(); ++k) {
        if (!(ext[k].h > config.params.h_dry))
            throw DryCell(k >= kGhostCells ? k - kGhostCells : 0, ext[k].h);
        ue[k] = ext[k].q / ext[k].h;
    }
    const std::vector<double> dudx = ue_gradient(ue, grid.dx, config.gradient_order);

    f.cells.resize(ext.size());
    for (std::size_t k = 0; k < ext.size(); ++k)
        f.cells[k] = prepare_cell(ext[k], dudx[k], config.params);
    return f;
}

double compute_dt(const std::vector<CellData>& cells, double dx, double cfl_number, double dt_max) {
    if (!(cfl_number > 0.0 && cfl_number <= 1.0))
        throw DomainError("cfl_number must lie in (0, 1]");
    const double lam = max_abs_speed(cells);
    double dt = lam > 0.0 ? cfl_number * dx / (2.0 * lam) : dt_max;
    for (const CellData& c : cells) {
        const double f2H = c.f2 * c.H;
        if (c.f2 < 0.0 && c.delta1 > kDelta1Floor)
            dt = std::min(dt, -cfl_number * c.delta1 * c.delta1 / (4.0 * f2H));
    }
    return std::min(dt, dt_max);
}

ConvectionResult convection_step(const StepFields& fields, double dx, double dt,
                                 const PhysicalParams& params) {
    const std::size_t n_ext = fields.cells.size();
    const std::size_t n = n_ext - 2 * kGhostCells;
    ConvectionResult out;
    out.W.resize(n);

    // Interface i sits between extended cells i + 1 and i + 2, i = 0..n.
    std::vector<Conserved> F_left(n + 1);
    std::vector<Conserved> F_right(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t k = i + kGhostCells - 1;
        const RiemannFan fan = solve_local_riemann(fields.cells[k], fields.cells[k + 1],
                                                   fields.topo[k + 1] - fields.topo[k], params);
        F_left[i] = fan.F_left;
        F_right[i] = fan.F_right;
        out.fallbacks += fan.fallback ? 1 : 0;
        out.near_critical += fan.near_critical ? 1 : 0;
    }

    const double ratio = dt / dx;
    for (std::size_t j = 0; j < n; ++j) {
        const Conserved& w = fields.cells[j + kGhostCells].w;
        out.W[j] = w - ratio * (F_left[j + 1] - F_right[j]);
        if (!(out.W[j].h > params.h_dry)) throw DryCell(j, out.W[j].h);
    }
    return out;
}

double friction_update(double delta1_half, double f2H, double dt) {
    const double disc = delta1_half * delta1_half + 4.0 * f2H * dt;
    if (disc < 0.0) throw NegativeDiscriminant("friction step: negative discriminant");
    return 0.5 * (delta1_half + std::sqrt(disc));
}

void friction_step(ConservedState& W, const std::vector<double>& f2H, double dt,
                   const PhysicalParams& params) {
    for (std::size_t j = 0; j < W.size(); ++j) {
        Conserved& w = W[j];
        const double ue = w.q / w.h;
        if (std::abs(ue) <= params.u_eps) {
            w.r = 0.0;
            continue;
        }
        w.r = friction_update(w.r / ue, f2H[j], dt) * ue;
    }
}

std::pair<std::size_t, double> hyperbolicity_census(const StepFields& fields,
                                                    const PhysicalParams& params) {
    std::size_t bad = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = kGhostCells; k + kGhostCells < fields.cells.size(); ++k) {
        const CellData& c = fields.cells[k];
        const CharacteristicRoots cr =
            characteristic_roots(c.w.h, c.ue, c.a, c.b, params.froude, params.delta_bar);
        if (!cr.hyperbolic) ++bad;
        worst = std::min(worst, cr.margin);
    }
    return {bad, worst};
}

RunState advance(RunState run, const Grid1D& grid, const SolverConfig& config, double t_end,
                 const AdvanceCallbacks& callbacks) {
    if (t_end < run.t) throw DomainError("advance: t_end precedes the current time");
    if (run.W.size() != grid.n_cells) throw MismatchedGrids("advance: state and grid sizes differ");
    const PhysicalParams& params = config.params;

    std::vector<double> snaps = callbacks.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    auto next_snap = std::lower_bound(snaps.begin(), snaps.end(), run.t);
    while (next_snap != snaps.end() && *next_snap == run.t) {
        if (callbacks.on_snapshot) callbacks.on_snapshot(run);
        ++next_snap;
    }

    std::vector<double> f2H(run.W.size());
    const std::size_t n = run.W.size();
    if (run.step_count == 0) run.diag.min_f2 = std::numeric_limits<double>::infinity();

    while (run.t < t_end) {
        try {
            StepFields fields = prepare_step(run.W, grid, config);
            run.ghosts = fields.ghosts;
            run.diag.invalid_invariants += fields.ghosts.invalid_invariant ? 1 : 0;

            double dt = compute_dt(fields.cells, grid.dx, config.cfl_number, config.dt_max);
            double target = t_end;
            if (next_snap != snaps.end()) target = std::min(target, *next_snap);
            bool hit = false;
            if (run.t + dt >= target) {
                dt = target - run.t;
                hit = true;
            }

            for (std::size_t j = 0; j < n; ++j) {
                const CellData& c = fields.cells[j + kGhostCells];
                f2H[j] = c.f2 * c.H;
                run.diag.min_f2 = std::min(run.diag.min_f2, c.f2);
            }
            run.diag.max_abs_lambda = std::max(run.diag.max_abs_lambda, max_abs_speed(fields.cells));

            ConvectionResult conv = convection_step(fields, grid.dx, dt, params);
            friction_step(conv.W, f2H, dt, params);
            run.diag.star_fallbacks += conv.fallbacks;
            run.diag.near_critical += conv.near_critical;

            std::array<double, 3> diff{}, scale{};
            for (std::size_t j = 0; j < n; ++j) {
                const Conserved d = conv.W[j] - run.W[j];
                diff[0] = std::max(diff[0], std::abs(d.h));
                diff[1] = std::max(diff[1], std::abs(d.q));
                diff[2] = std::max(diff[2], std::abs(d.r));
                scale[0] = std::max(scale[0], std::abs(conv.W[j].h));
                scale[1] = std::max(scale[1], std::abs(conv.W[j].q));
                scale[2] = std::max(scale[2], std::abs(conv.W[j].r));
            }
            double rate = 0.0;
            for (int c = 0; c < 3; ++c)
                if (scale[c] > 0.0 && dt > 0.0) rate = std::max(rate, diff[c] / (scale[c] * dt));
            run.diag.change_rate = rate;

            run.W = std::move(conv.W);
            run.t = hit ? target : run.t + dt;
            ++run.step_count;

            if (config.log_every > 0 && config.log && run.step_count % config.log_every == 0) {
                const auto [bad, worst] = hyperbolicity_census(fields, params);
                run.diag.non_hyperbolic_cells = bad;
                run.diag.worst_margin = worst;
                *config.log << "step " << run.step_count << " t " << run.t << " dt " << dt
                            << " non_hyperbolic " << bad << " worst_margin " << worst << '\n';
            }
        } catch (const NumericalFailure&) {
            throw;
        } catch (const Error& e) {
            throw NumericalFailure(e.what(), run);
        }

        while (next_snap != snaps.end() && *next_snap <= run.t) {
            if (callbacks.on_snapshot) callbacks.on_snapshot(run);
            ++next_snap;
        }
        if (callbacks.on_step && !callbacks.on_step(run)) break;
    }

    try {
        const StepFields fields = prepare_step(run.W, grid, config);
        const auto [bad, worst] = hyperbolicity_census(fields, params);
        run.diag.non_hyperbolic_cells = bad;
        run.diag.worst_margin = worst;
    } catch (const Error& e) {
        throw NumericalFailure(e.what(), run);
    }
    return run;
}

}  // namespace esw
