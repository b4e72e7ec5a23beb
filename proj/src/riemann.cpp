#include "esw/riemann.hpp"

#include <algorithm>
#include <cmath>

#include "esw/errors.hpp"
#include "esw/hyperbolicity.hpp"

namespace esw {

namespace {

constexpr int kMaxNewton = 50;
constexpr double kNewtonTol = 1e-12;
constexpr double kCriticalSlope = 1e-8;

struct StarDepths {
    double h_left;
    double h_right;
    bool ok;
    bool near_critical;
};

// Specific energy q^2/(2h^2) + h/Fr^2 and its derivative.
struct Energy {
    double q2;
    double inv_fr2;
    double value(double h) const { return 0.5 * q2 / (h * h) + h * inv_fr2; }
    double slope(double h) const { return -q2 / (h * h * h) + inv_fr2; }
};

// Solves E(h_R) - E(h_L) = -[f_b]/Fr^2 together with
// lam_R h_R - lam_L h_L = mass, starting from the HLL depth.
StarDepths solve_star_depths(double lam_L, double lam_R, double mass, double h_hll, double q_star,
                             double jump_fb, double froude) {
    const Energy E{q_star * q_star, 1.0 / (froude * froude)};
    const double target = -jump_fb * E.inv_fr2;

    if (!(mass > 0.0) || !(h_hll > 0.0)) return {h_hll, h_hll, false, false};

    // One-sided fans: the side with zero speed only needs its own depth for reporting.
    if (lam_L == 0.0 || lam_R == 0.0) {
        const bool left_fixed = lam_L == 0.0;
        const double known = left_fixed ? mass / lam_R : mass / -lam_L;
        // E(unknown) = E(known) +/- target
        const double goal = left_fixed ? E.value(known) - target : E.value(known) + target;
        double h = known;
        bool ok = false;
        bool near = false;
        for (int it = 0; it < kMaxNewton; ++it) {
            const double s = E.slope(h);
            if (std::abs(s) < kCriticalSlope) near = true;
            if (s == 0.0) break;
            double step = (E.value(h) - goal) / s;
            if (h - step <= 0.0) step = 0.5 * h;
            h -= step;
            if (std::abs(step) <= kNewtonTol * h) {
                ok = true;
                break;
            }
        }
        if (!ok || !(h > 0.0)) return {h_hll, h_hll, false, near};
        return left_fixed ? StarDepths{h, known, true, near} : StarDepths{known, h, true, near};
    }

    // Eliminate h_L = (mass - lam_R h_R)/(-lam_L); admissible h_R lies in (0, mass/lam_R).
    const double upper = mass / lam_R;
    const double w = lam_R / -lam_L;
    const auto h_left = [&](double hr) { return (mass - lam_R * hr) / -lam_L; };
    const auto g = [&](double hr) { return E.value(hr) - E.value(h_left(hr)) - target; };
    const auto dg = [&](double hr) { return E.slope(hr) + w * E.slope(h_left(hr)); };

    double hr = std::clamp(h_hll, 1e-3 * upper, (1.0 - 1e-3) * upper);
    double lo = 0.0;
    double hi = upper;
    bool near = false;
    for (int it = 0; it < kMaxNewton; ++it) {
        const double gv = g(hr);
        const double slope = dg(hr);
        if (std::abs(slope) < kCriticalSlope) near = true;
        double next = slope != 0.0 ? hr - gv / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + std::min(hi, upper));
        // Shrink the bracket only when the sign structure is the monotone one.
        if (slope > 0.0) {
            if (gv > 0.0)
                hi = std::min(hi, hr);
            else
                lo = std::max(lo, hr);
        }
        const double step = next - hr;
        hr = next;
        if (std::abs(step) <= kNewtonTol * hr) {
            // polish once on the converged iterate
            const double s2 = dg(hr);
            if (s2 != 0.0) {
                const double polished = hr - g(hr) / s2;
                if (polished > 0.0 && polished < upper) hr = polished;
            }
            const double hl = h_left(hr);
            if (!(hl > 0.0) || !(hr > 0.0)) return {h_hll, h_hll, false, near};
            return {hl, hr, true, near};
        }
    }
    return {h_hll, h_hll, false, near};
}

}  // namespace

CellData prepare_cell(const Conserved& w, double dudx, const PhysicalParams& params) {
    if (!(w.h > params.h_dry)) throw DryCell(0, w.h);
    CellData c;
    c.w = w;
    c.ue = w.q / w.h;
    c.delta1 = displacement_thickness(w, params);
    c.lambda1 = c.delta1 * c.delta1 * dudx;
    const ShapeFactorSlope s = shape_factor(params.closure, c.lambda1);
    c.H = s.H;
    c.f2 = s.f2;
    const JacobianCoeffs jc = jacobian_coeffs(c.ue, w.r, c.lambda1, s.H, s.dH_dlambda1);
    c.a = jc.a;
    c.b = jc.b;
    const SpeedBounds nb = nickalls_bounds(c.ue, jc.b, w.h, params.froude);
    c.lam_L = nb.lam_L;
    c.lam_R = nb.lam_R;
    return c;
}

Conserved physical_flux(const CellData& c, const PhysicalParams& params) {
    const double fr2 = params.froude * params.froude;
    return {c.w.q - params.delta_bar * c.w.r,
            c.w.q * c.ue + c.w.h * c.w.h / (2.0 * fr2),
            (1.0 + 1.0 / c.H) * c.w.r * c.ue};
}

SourceAverages source_averages(const Conserved& left, const Conserved& right, double jump_fb,
                               double froude) {
    const double hsum = left.h + right.h;
    return {hsum / (2.0 * froude * froude) * jump_fb, (left.q + right.q) / hsum * (right.r - left.r)};
}

RiemannFan solve_local_riemann(const CellData& left, const CellData& right, double jump_fb,
                               const PhysicalParams& params) {
    RiemannFan fan{};
    fan.lam_L = std::min({left.lam_L, right.lam_L, 0.0});
    fan.lam_R = std::max({left.lam_R, right.lam_R, 0.0});
    const double span = fan.lam_R - fan.lam_L;

    const Conserved FL = physical_flux(left, params);
    const Conserved FR = physical_flux(right, params);
    const Conserved& WL = left.w;
    const Conserved& WR = right.w;
    const SourceAverages src = source_averages(WL, WR, jump_fb, params.froude);

    fan.r_star = (fan.lam_R * WR.r - fan.lam_L * WL.r - (FR.r - FL.r) + src.exchange_src) / span;
    fan.q_star = (fan.lam_R * WR.q - fan.lam_L * WL.q - (FR.q - FL.q) - src.topo_src +
                  params.delta_bar * src.exchange_src) /
                 span;

    const double mass = fan.lam_R * WR.h - fan.lam_L * WL.h - (FR.h - FL.h);
    const double h_hll = mass / span;
    if (jump_fb == 0.0) {
        fan.h_L_star = h_hll;
        fan.h_R_star = h_hll;
    } else {
        const StarDepths sd =
            solve_star_depths(fan.lam_L, fan.lam_R, mass, h_hll, fan.q_star, jump_fb, params.froude);
        fan.h_L_star = sd.h_left;
        fan.h_R_star = sd.h_right;
        fan.fallback = !sd.ok;
        fan.near_critical = sd.near_critical;
    }

    const Conserved star_L{fan.h_L_star, fan.q_star, fan.r_star};
    const Conserved star_R{fan.h_R_star, fan.q_star, fan.r_star};
    fan.F_left = FL + fan.lam_L * (star_L - WL);
    fan.F_right = FR - fan.lam_R * (WR - star_R);
    return fan;
}

}  // namespace esw
