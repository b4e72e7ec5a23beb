// Acceptance checks. One PASS/FAIL line per criterion on stdout; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "esw/analytic.hpp"
#include "esw/closures.hpp"
#include "esw/hyperbolicity.hpp"
#include "esw/mlsw.hpp"
#include "esw/scenario.hpp"
#include "esw/snapshot.hpp"
#include "esw/timeloop.hpp"
#include "oracles.hpp"

using namespace esw;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
    std::cout << "AC" << id << ' ' << (pass ? "PASS" : "FAIL") << "  " << title << ": " << detail << std::endl;
    if (!pass) ++failures;
}

std::string num(double v, int digits = 4) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

void progress(const std::string& what) { std::cerr << "  ... " << what << std::endl; }

// ---------------------------------------------------------------------------
// bump runs shared by several criteria

struct BumpKey {
    FlowRegime regime;
    double alpha;
    double sigma;
    GradientOrder order;
    bool fixed_profile;
    std::size_t n_cells = 2000;
    auto operator<=>(const BumpKey&) const = default;
};

struct BumpRun {
    Grid1D grid;
    SolverConfig solver;
    RunState state;
    SnapshotTable table;
};

std::map<BumpKey, BumpRun> bump_cache;

const BumpRun& bump_run(const BumpKey& k) {
    if (auto it = bump_cache.find(k); it != bump_cache.end()) return it->second;
    ScenarioConfig c = scenario_defaults(ScenarioKind::Bump);
    c.regime = k.regime;
    if (k.regime == FlowRegime::Supercritical) c.h0 = 0.5;
    c.bump.alpha = k.alpha;
    c.bump.sigma = k.sigma;
    c.gradient_order = k.order;
    if (k.fixed_profile) c.params.closure = make_fixed_profile(2.59, 0.22);
    c.n_cells = k.n_cells;
    progress("bump run " + regime_name(k.regime) + " alpha=" + num(k.alpha) + " sigma=" + num(k.sigma) +
             (k.order == GradientOrder::Second ? " 2nd-order" : "") + (k.fixed_profile ? " fixed-profile" : "") + " n=" + std::to_string(k.n_cells));
    BumpRun r;
    r.grid = build_grid(c);
    r.solver = solver_config(c);
    r.state.W = initial_state(c, r.grid);
    r.state = advance(std::move(r.state), r.grid, r.solver, c.t_end);
    r.table = snapshot_table(r.state.W, r.grid, r.solver);
    return bump_cache.emplace(k, std::move(r)).first->second;
}

struct Lag {
    double argmax;     // x of the largest bump-induced shear
    double amplitude;  // max - min of the bump-induced shear in the window
};

// The bare shear is dominated by the 1/sqrt(x) decay of the leading-edge layer,
// so the bump signature is taken against a run without the bump.
Lag bump_signature(const SnapshotTable& bump, const SnapshotTable& flat, double center, double half_width) {
    Lag out{std::numeric_limits<double>::quiet_NaN(), 0.0};
    double hi = -std::numeric_limits<double>::infinity(), lo = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < bump.size(); ++j) {
        if (std::abs(bump[j].x - center) > half_width) continue;
        const double d = bump[j].tau_b - flat[j].tau_b;
        if (d > hi) {
            hi = d;
            out.argmax = bump[j].x;
        }
        lo = std::min(lo, d);
    }
    out.amplitude = hi - lo;
    return out;
}

double min_f2(const SnapshotTable& t) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : t) m = std::min(m, r.f2);
    return m;
}

// ---------------------------------------------------------------------------

void ac1() {
    const auto start = Clock::now();
    const ClosureEvaluation v = evaluate_closure(FalknerSkanFit{}, 1.0, 1.0, 0.0);
    const double us = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
    const bool ok = v.H == 2.59 && std::abs(v.f2 - 0.2207) <= 5e-4 && us < 1000.0;
    report(1, "Blasius closure constants", ok,
           "H=" + num(v.H, 17) + " f2=" + num(v.f2, 6) + " time=" + num(us, 3) + "us");
}

void ac2() {
    struct Row {
        double Lambda, l1, H, f2;
    };
    const Row rows[] = {{12.0, 0.48, 2.25, 0.356}, {0.0, 0.0, 2.554, 0.235}, {-12.0, -1.92, 3.5, 0.0}};
    // printed precision: Lambda1 two decimals, H and f2 three
    auto matches = [](double v, double printed, double unit) { return std::abs(v - printed) <= 0.5 * unit + 1e-12; };
    bool table = true;
    for (const Row& r : rows) {
        const auto p = pohlhausen4_factors(r.Lambda);
        table = table && matches(p.lambda1, r.l1, 0.01) && matches(p.H, r.H, 0.001) && matches(p.f2, r.f2, 0.001);
    }
    double worst = 0.0;
    for (double L = -24.0; L <= 12.0; L += 0.5) {
        const auto p = pohlhausen4_factors(L);
        const auto q = oracle::pohlhausen_by_quadrature(L);
        worst = std::max({worst, std::abs(p.lambda1 - q.lambda1), std::abs(p.H - q.H), std::abs(p.f2 - q.f2)});
    }
    report(2, "Pohlhausen table", table && worst <= 1e-10,
           std::string("table rows ") + (table ? "match" : "differ") + ", max quadrature deviation " + num(worst, 3));
}

void ac3() {
    progress("steady convergence study (dx = 1e-2, 1e-3, 1e-4; sub- and supercritical)");
    ScenarioConfig c = scenario_defaults(ScenarioKind::BlasiusSteady);
    c.convergence.include_supercritical = true;
    const auto rows = convergence_study(c);
    std::map<double, double> sub, sup;
    for (const auto& r : rows) (r.regime == FlowRegime::Subcritical ? sub : sup)[r.dx] = r.error;
    const auto& dxs = c.convergence.dx_list;
    bool monotone = true, ordered = true;
    for (std::size_t i = 1; i < dxs.size(); ++i) monotone = monotone && sub[dxs[i]] <= sub[dxs[i - 1]];
    for (double dx : dxs) ordered = ordered && sup[dx] <= sub[dx];
    const double finest = sub[dxs.back()];
    const bool band = finest >= 5e-5 && finest <= 2e-4;
    std::string detail = "sub gaps";
    for (double dx : dxs) detail += " " + num(sub[dx], 4);
    detail += "; sup gaps";
    for (double dx : dxs) detail += " " + num(sup[dx], 4);
    detail += std::string("; finest in [5e-5, 2e-4]: ") + (band ? "yes" : "no") +
              ", non-increasing: " + (monotone ? "yes" : "no") + ", sup <= sub: " + (ordered ? "yes" : "no");
    report(3, "Blasius convergence", band && monotone && ordered, detail);
}

void ac4() {
    progress("impulsive start on [0, 4]");
    const ScenarioConfig c = scenario_defaults(ScenarioKind::ImpulsiveStart);
    const Grid1D grid = build_grid(c);
    const SolverConfig solver = solver_config(c);
    const double H = 2.59, f2 = 0.22;
    std::map<double, SnapshotTable> snaps;
    RunState run;
    run.W = initial_state(c, grid);
    AdvanceCallbacks cb;
    cb.snapshot_times = c.snapshot_times;
    cb.on_snapshot = [&](const RunState& s) { snaps[s.t] = snapshot_table(s.W, grid, solver); };
    advance(std::move(run), grid, solver, c.t_end, cb);

    // (a) plateau well downstream of the transition point and clear of the outlet
    double worst_plateau = 0.0, plateau_sample = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        double sum = 0.0;
        int n = 0;
        for (const auto& r : snaps[t])
            if (r.x >= 1.5 * 2.0 * t / H && r.x <= 3.5) {
                sum += r.delta1 / std::sqrt(t);
                ++n;
            }
        const double p = sum / n;
        if (t == 1.0) plateau_sample = p;
        worst_plateau = std::max(worst_plateau, std::abs(p / 1.0675 - 1.0));
    }
    const bool a = worst_plateau <= 0.02;

    // (b) t/x >= 8 at t = 4, away from the first cells where the inlet offset still shows
    double sum = 0.0;
    int n = 0;
    for (const auto& r : snaps[4.0])
        if (r.x >= 0.2 && r.x <= 0.5) {
            sum += r.tau_b * std::sqrt(r.x);
            ++n;
        }
    const double tau_sqrt_x = sum / n;
    const bool b = std::abs(tau_sqrt_x / 0.332 - 1.0) <= 0.02;

    // (c) furthest abscissa still within 5% of the Blasius branch
    bool cc = true;
    std::string ratios;
    for (double t : {0.5, 1.0, 2.0}) {
        double x_tr = 0.0;
        for (const auto& r : snaps[t]) {
            const double blasius = std::sqrt(2.0 * f2 * H * H * r.x);
            if (std::abs(r.delta1 / blasius - 1.0) <= 0.05) x_tr = r.x;
        }
        const double ratio = x_tr / (t / H);
        cc = cc && ratio <= 1.5 && ratio >= 1.0 / 1.5;
        ratios += " " + num(ratio, 3);
    }
    report(4, "Stokes to Blasius transition", a && b && cc,
           "plateau delta1/sqrt(t)=" + num(plateau_sample, 5) + " (worst dev " + num(100 * worst_plateau, 2) +
               "%), tau*sqrt(x)=" + num(tau_sqrt_x, 4) + ", transition/(t/H) =" + ratios);
}

void ac5() {
    const double center = 1.0, sigma = 0.1;
    const auto& sub = bump_run({FlowRegime::Subcritical, 0.01, sigma, GradientOrder::Fourth, false});
    const auto& sub0 = bump_run({FlowRegime::Subcritical, 0.0, sigma, GradientOrder::Fourth, false});
    const auto& sup = bump_run({FlowRegime::Supercritical, 0.01, sigma, GradientOrder::Fourth, false});
    const auto& sup0 = bump_run({FlowRegime::Supercritical, 0.0, sigma, GradientOrder::Fourth, false});
    const Lag ls = bump_signature(sub.table, sub0.table, center, 3 * sigma);
    const Lag lp = bump_signature(sup.table, sup0.table, center, 3 * sigma);

    // classical linear solution: the velocity maximum sits on the crest
    const auto lin = analytic::linearized_bump(sub.grid.topo, 2.0, 1.0, 1.0, 1.0);
    const auto crest = std::max_element(sub.grid.topo.begin(), sub.grid.topo.end()) - sub.grid.topo.begin();
    const auto peak = std::max_element(lin.U.begin(), lin.U.end()) - lin.U.begin();
    const double lin_lag = sub.grid.cell_centers[peak] - sub.grid.cell_centers[crest];
    const double x_crest = sub.grid.cell_centers[crest];

    const bool ok = ls.argmax < x_crest && lp.argmax > x_crest && lin_lag == 0.0;
    std::string detail = "sub argmax " + num(ls.argmax, 5) + ", sup argmax " + num(lp.argmax, 5) + ", crest " +
                         num(x_crest, 5) + ", linear shallow-water lag " + num(lin_lag);
    const double sup_min_f2 = min_f2(sup.table);
    if (sup_min_f2 < 0.0) {
        // the pulses grow faster on finer grids; a coarse run shows the lag without them
        const auto& c = bump_run({FlowRegime::Supercritical, 0.01, sigma, GradientOrder::Fourth, false, 500});
        const auto& c0 = bump_run({FlowRegime::Supercritical, 0.0, sigma, GradientOrder::Fourth, false, 500});
        const Lag lc = bump_signature(c.table, c0.table, center, 3 * sigma);
        detail += "; supercritical field carries short-wave pulses (min f2 " + num(sup_min_f2, 3) +
                  "), pulse-free run at dx=4e-3 gives argmax " + num(lc.argmax, 5) + " (min f2 " +
                  num(min_f2(c.table), 3) + ")";
    }
    report(5, "Phase lag", ok, detail);
}

void ac6() {
    const double sigma = 0.05;
    const auto& fs = bump_run({FlowRegime::Subcritical, 0.01, sigma, GradientOrder::Fourth, false});
    const auto& fs0 = bump_run({FlowRegime::Subcritical, 0.0, 0.1, GradientOrder::Fourth, false});
    const auto& fx = bump_run({FlowRegime::Subcritical, 0.01, sigma, GradientOrder::Fourth, true});
    const auto& fx0 = bump_run({FlowRegime::Subcritical, 0.0, 0.1, GradientOrder::Fourth, true});
    const Lag a = bump_signature(fs.table, fs0.table, 1.0, 3 * sigma);
    const Lag b = bump_signature(fx.table, fx0.table, 1.0, 3 * sigma);
    const double lead_fs = 1.0 - a.argmax, lead_fx = 1.0 - b.argmax;
    report(6, "Closure sensitivity", b.amplitude < a.amplitude && lead_fx < lead_fs,
           "Falkner-Skan lead " + num(lead_fs, 4) + " amplitude " + num(a.amplitude, 4) + "; fixed profile lead " +
               num(lead_fx, 4) + " amplitude " + num(b.amplitude, 4));
}

void ac7() {
    // separation threshold found by bisection on the 4th-order run lies near 0.025
    const double alpha_sep = 0.026;
    const double m01 = min_f2(bump_run({FlowRegime::Subcritical, 0.01, 0.1, GradientOrder::Fourth, false}).table);
    const double m4 = min_f2(bump_run({FlowRegime::Subcritical, alpha_sep, 0.1, GradientOrder::Fourth, false}).table);
    const double m2 = min_f2(bump_run({FlowRegime::Subcritical, alpha_sep, 0.1, GradientOrder::Second, false}).table);
    const double m4b = min_f2(bump_run({FlowRegime::Subcritical, 0.03, 0.1, GradientOrder::Fourth, false}).table);
    const double m2b = min_f2(bump_run({FlowRegime::Subcritical, 0.03, 0.1, GradientOrder::Second, false}).table);
    report(7, "Separation capture", m01 > 0.0 && m4 <= 0.0 && m2 >= m4,
           "min f2: alpha=0.01 " + num(m01, 4) + "; alpha=" + num(alpha_sep) + " 4th " + num(m4, 4) + " 2nd " +
               num(m2, 4) + " (alpha=0.03: 4th " + num(m4b, 6) + " 2nd " + num(m2b, 6) + ")");
}

void ac8() {
    // (a) lake at rest
    SolverConfig cfg;
    cfg.boundaries.left = SubcriticalInflow{0.0};
    const std::size_t n = 200;
    const Grid1D grid =
        Grid1D::uniform(0.0, 2.0, n, [](double x) { return analytic::gaussian_bump(x, 0.01, 0.1); });
    RunState run;
    for (std::size_t j = 0; j < n; ++j) run.W.push_back(from_primitive(2.0 - grid.topo[j], 0.0, 0.0));
    double worst = 0.0;
    std::size_t steps = 0;
    ConservedState prev = run.W;
    AdvanceCallbacks cb;
    cb.on_step = [&](const RunState& r) {
        for (std::size_t j = 0; j < n; ++j)
            worst = std::max({worst, std::abs(r.W[j].h - prev[j].h), std::abs(r.W[j].q - prev[j].q),
                              std::abs(r.W[j].r - prev[j].r)});
        prev = r.W;
        return ++steps < 10000;
    };
    advance(run, grid, cfg, 1e9, cb);
    const bool a = steps == 10000 && worst <= 1e-13;

    // (b) without the layer the pipeline is plain shallow water
    SolverConfig sw;
    sw.params.delta_bar = 0.0;
    sw.params.closure = BlasiusConstant{};
    double err = 0.0;
    for (int scenario = 0; scenario < 2; ++scenario) {
        const bool bump = scenario == 1;
        sw.boundaries.left = SubcriticalInflow{bump ? 1.0 : 0.0};
        const Grid1D g = bump ? Grid1D::uniform(0.0, 2.0, 200, [](double x) { return analytic::gaussian_bump(x, 0.05, 0.1); })
                              : Grid1D::uniform(0.0, 1.0, 200);
        RunState r;
        oracle::ShallowWaterSetup s;
        for (std::size_t j = 0; j < g.n_cells; ++j) {
            const double h = bump ? 2.0 - g.topo[j] : (g.cell_centers[j] < 0.5 ? 2.0 : 1.0);
            const double u = bump ? 1.0 : 0.0;
            r.W.push_back(from_primitive(h, u, 0.0));
            s.h.push_back(h);
            s.q.push_back(h * u);
        }
        s.topo = g.topo;
        s.dx = g.dx;
        s.froude = 1.0;
        s.u_in = bump ? 1.0 : 0.0;
        const double t_end = bump ? 1.0 : 0.2;
        const auto ref = oracle::shallow_water(s, t_end);
        const auto got = advance(r, g, sw, t_end);
        for (std::size_t j = 0; j < g.n_cells; ++j)
            err = std::max({err, std::abs(got.W[j].h - ref.h[j]), std::abs(got.W[j].q - ref.q[j])});
    }
    const bool b = err <= 1e-12;

    // (c) friction update positivity
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> D(0.0, 3.0), F(-1.0, 1.0), S(0.0, 1.0);
    int negative = 0;
    for (int i = 0; i < 100000; ++i) {
        const double d = D(rng), f = F(rng);
        double dt = 0.1 * S(rng);
        if (f < 0.0) dt = std::min(dt, 0.999 * d * d / (4.0 * -f));
        const ConservedState w0{from_primitive(1.0, 1.0, d)};
        ConservedState w = w0;
        friction_step(w, {f}, dt, PhysicalParams{});
        if (!(w[0].r >= 0.0)) ++negative;
    }
    report(8, "Well-balancedness and reductions", a && b && negative == 0,
           "lake at rest max change/step " + num(worst, 3) + " over " + std::to_string(steps) +
               " steps; no-layer vs shallow-water oracle " + num(err, 3) + "; negative delta1 " +
               std::to_string(negative) + "/100000");
}

void ac9() {
    // delta1 up to the Blasius thickness at the end of the unit domain
    const double delta_bar = 1e-3, d1_max = 1.718 * std::sqrt(2.0);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> H(0.1, 3.0), U(0.1, 2.0), L(-2.0, 0.5), D(0.0, d1_max);
    int complex = 0, outside = 0, far = 0;
    double worst = 0.0, worst_gap = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double h = H(rng), u = U(rng), l1 = L(rng), d1 = D(rng);
        const auto w = analyze_wave_speeds(FalknerSkanFit{}, h, u, d1 * u, l1, 1.0, delta_bar);
        if (w.full.n_real < 3) {
            ++complex;
            continue;
        }
        std::array<double, 3> z{w.lam1_0, w.lam2_0, w.lam3_0};
        std::sort(z.begin(), z.end());
        bool this_far = false;
        for (int k = 0; k < 3; ++k) {
            const double e = std::abs(w.full.roots[k] - z[k]);
            worst = std::max(worst, e);
            if (e > 10.0 * delta_bar) this_far = true;
            if (w.full.roots[k] < w.lam_L || w.full.roots[k] > w.lam_R) ++outside;
        }
        if (this_far) {
            ++far;
            // distance between the layer speed and the nearest gravity speed
            worst_gap = std::max(worst_gap, std::min(std::abs(w.lam3_0 - w.lam1_0), std::abs(w.lam3_0 - w.lam2_0)));
        }
    }
    report(9, "Hyperbolicity", complex == 0 && outside == 0 && far == 0,
           "complex " + std::to_string(complex) + "/1000, outside bounds " + std::to_string(outside) +
               ", states with a root > 10*delta_bar from decoupled " + std::to_string(far) + " (max shift " +
               num(worst, 3) + ", all with layer speed within " + num(worst_gap, 3) + " of a gravity speed)");
}

void ac10() {
    progress("multilayer comparison");
    const auto dir = std::filesystem::temp_directory_path() / "esw_acceptance_mlsw";
    ScenarioConfig c = scenario_defaults(ScenarioKind::MlswCompare);
    c.snapshot_times.clear();
    const auto with = run_scenario(c, dir / "bump");
    ScenarioConfig flat = c;
    flat.bump.alpha = 0.0;
    const auto without = run_scenario(flat, dir / "flat");

    const Grid1D grid = build_grid(c);
    const SolverConfig solver = solver_config(c);
    const mlsw::MlswConfig mc = mlsw_config(c);
    const Grid1D flat_grid = build_grid(flat);
    const auto esw_b = snapshot_table(with.esw.W, grid, solver);
    const auto esw_f = snapshot_table(without.esw.W, flat_grid, solver);
    const auto ml_b = snapshot_table(with.mlsw->state, grid, mc, c.gradient_order);
    const auto ml_f = snapshot_table(without.mlsw->state, flat_grid, mc, c.gradient_order);
    std::filesystem::remove_all(dir);

    const double w = 3 * c.bump.sigma;
    const Lag e = bump_signature(esw_b, esw_f, c.bump.center, w);
    const Lag m = bump_signature(ml_b, ml_f, c.bump.center, w);
    const bool same_sign = (e.argmax < c.bump.center) == (m.argmax < c.bump.center) && e.argmax != c.bump.center;

    double band = 0.0;
    int used = 0;
    for (const auto& r : ml_b) {
        if (!(r.lambda1 > 0.0) || !(r.H >= 2.2 && r.H <= 3.2) || !std::isfinite(r.f2)) continue;
        band = std::max(band, std::abs(r.f2 - friction_factor_fs(r.H)));
        ++used;
    }
    report(10, "Multilayer cross-check", same_sign && m.amplitude < e.amplitude && used > 0 && band <= 0.1,
           "ESW argmax " + num(e.argmax, 5) + " amplitude " + num(e.amplitude, 4) + "; MLSW argmax " +
               num(m.argmax, 5) + " amplitude " + num(m.amplitude, 4) + "; accelerated-phase |f2 - fit| max " +
               num(band, 3) + " over " + std::to_string(used) + " cells");
}

}  // namespace

int main() {
    const auto start = Clock::now();
    ac1();
    ac2();
    ac3();
    ac4();
    ac5();
    ac6();
    ac7();
    ac8();
    ac9();
    ac10();
    std::cerr << "acceptance finished in " << num(std::chrono::duration<double>(Clock::now() - start).count(), 4)
              << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}
