#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

Quadrature gauss_legendre(std::size_t n, double a, double b) {
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Chebyshev-like first guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        q.nodes[i] = 0.5 * (b - a) * x + 0.5 * (b + a);
        q.weights[i] = (b - a) / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

double integrate(const Quadrature& rule, const std::function<double(double)>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
    return s;
}

PohlhausenIntegrals pohlhausen_by_quadrature(double Lambda) {
    const auto phi = [Lambda](double xi) {
        const double m = 1.0 - xi;
        return 2.0 * xi - 2.0 * xi * xi * xi + xi * xi * xi * xi + Lambda / 6.0 * xi * m * m * m;
    };
    const Quadrature rule = gauss_legendre(12, 0.0, 1.0);
    PohlhausenIntegrals out{};
    out.alpha1 = integrate(rule, [&](double xi) { return 1.0 - phi(xi); });
    out.alpha2 = integrate(rule, [&](double xi) { return phi(xi) * (1.0 - phi(xi)); });

    // phi(e)/e is a cubic in e: Neville extrapolation through five points is exact.
    const double eps[5] = {0.1, 0.2, 0.3, 0.4, 0.5};
    double p[5];
    for (int i = 0; i < 5; ++i) p[i] = phi(eps[i]) / eps[i];
    for (int k = 1; k < 5; ++k)
        for (int i = 4; i >= k; --i) p[i] = (-eps[i - k] * p[i] + eps[i] * p[i - 1]) / (eps[i] - eps[i - k]);
    out.wall_slope = p[4];

    out.lambda1 = out.alpha1 * out.alpha1 * Lambda;
    out.H = out.alpha1 / out.alpha2;
    out.f2 = out.alpha1 * out.wall_slope / out.H;
    return out;
}

namespace {

struct Fan {
    double lo;
    double hi;
};

// Bounds of the cubic characteristic polynomial of the coupled system with the
// viscous layer switched off, written out from the closed form.
Fan bounds(double h, double q, double froude, double shape_factor) {
    const double u = q / h;
    const double b = u + u / shape_factor;
    const double c2 = h / (froude * froude);
    const double root = std::sqrt((2.0 * u - b) * (2.0 * u - b) + 3.0 * c2);
    return {(u + b - 2.0 * root) / 3.0, (u + b + 2.0 * root) / 3.0};
}

}  // namespace

ShallowWaterResult shallow_water(const ShallowWaterSetup& s, double t_end) {
    const std::size_t n = s.h.size();
    const double g = 1.0 / (s.froude * s.froude);
    std::vector<double> h = s.h, q = s.q;
    std::vector<double> H(n + 4), Q(n + 4), Z(n + 4);
    std::vector<double> fl_h(n + 1), fl_q(n + 1), fr_h(n + 1), fr_q(n + 1);
    ShallowWaterResult res;
    double t = 0.0;

    const auto energy = [&](double qs, double d) { return 0.5 * qs * qs / (d * d) + g * d; };
    const auto energy_slope = [&](double qs, double d) { return -qs * qs / (d * d * d) + g; };

    while (t < t_end) {
        // ghosts
        const double u1 = q[0] / h[0];
        const double root = std::sqrt(h[0]) + s.froude * (s.u_in - u1) / 2.0;
        const double hin = root * root;
        for (int k = 0; k < 2; ++k) {
            H[k] = hin;
            Q[k] = hin * s.u_in;
            Z[k] = s.topo.front();
            H[n + 2 + k] = h[n - 1];
            Q[n + 2 + k] = q[n - 1];
            Z[n + 2 + k] = s.topo.back();
        }
        for (std::size_t j = 0; j < n; ++j) {
            H[j + 2] = h[j];
            Q[j + 2] = q[j];
            Z[j + 2] = s.topo[j];
        }

        double smax = 0.0;
        for (std::size_t k = 0; k < n + 4; ++k) {
            const Fan f = bounds(H[k], Q[k], s.froude, s.shape_factor);
            smax = std::max({smax, std::abs(f.lo), std::abs(f.hi)});
        }
        double dt = std::min(s.cfl * s.dx / (2.0 * smax), s.dt_max);
        bool last = false;
        if (t + dt >= t_end) {
            dt = t_end - t;
            last = true;
        }

        for (std::size_t i = 0; i <= n; ++i) {
            const std::size_t kl = i + 1, kr = i + 2;
            const Fan fa = bounds(H[kl], Q[kl], s.froude, s.shape_factor);
            const Fan fb = bounds(H[kr], Q[kr], s.froude, s.shape_factor);
            const double lamL = std::min({fa.lo, fb.lo, 0.0});
            const double lamR = std::max({fa.hi, fb.hi, 0.0});
            const double hl = H[kl], hr = H[kr], ql = Q[kl], qr = Q[kr];
            const double mom_l = ql * ql / hl + 0.5 * g * hl * hl;
            const double mom_r = qr * qr / hr + 0.5 * g * hr * hr;
            const double jump = Z[kr] - Z[kl];
            const double span = lamR - lamL;
            const double qs = (lamR * qr - lamL * ql - (mom_r - mom_l) - 0.5 * g * (hl + hr) * jump) / span;
            const double mass = lamR * hr - lamL * hl - (qr - ql);
            double hsl = mass / span, hsr = mass / span;
            if (jump != 0.0) {
                if (!(lamL < 0.0 && lamR > 0.0)) throw std::runtime_error("oracle: one-sided fan with a bed jump");
                // Newton on the left star depth; the right one follows from mass.
                double d = mass / span;
                for (int it = 0; it < 100; ++it) {
                    const double dr = (mass + lamL * d) / lamR;
                    const double f = energy(qs, dr) - energy(qs, d) + g * jump;
                    const double df = energy_slope(qs, dr) * lamL / lamR - energy_slope(qs, d);
                    const double step = f / df;
                    d -= step;
                    if (std::abs(step) <= 1e-15 * d) break;
                }
                hsl = d;
                hsr = (mass + lamL * d) / lamR;
            }
            fl_h[i] = ql + lamL * (hsl - hl);
            fl_q[i] = mom_l + lamL * (qs - ql);
            fr_h[i] = qr - lamR * (hr - hsr);
            fr_q[i] = mom_r - lamR * (qr - qs);
        }
        for (std::size_t j = 0; j < n; ++j) {
            h[j] -= dt / s.dx * (fl_h[j + 1] - fr_h[j]);
            q[j] -= dt / s.dx * (fl_q[j + 1] - fr_q[j]);
        }
        t = last ? t_end : t + dt;
        ++res.steps;
    }
    res.h = std::move(h);
    res.q = std::move(q);
    return res;
}

FrictionResult shallow_water_friction(const FrictionSetup& s, double t_end) {
    const std::size_t n = s.h.size();
    const double g = 1.0 / (s.froude * s.froude);
    std::vector<double> h = s.h, u = s.u;
    std::vector<double> mass(n + 1), mom_l(n + 1), mom_r(n + 1);
    FrictionResult res;
    double t = 0.0;
    while (t < t_end) {
        double smax = 0.0;
        for (std::size_t j = 0; j < n; ++j) smax = std::max(smax, std::abs(u[j]) + std::sqrt(h[j]) / s.froude);
        double dt = std::min(s.dt_max, s.cfl * s.dx / (2.0 * smax));
        bool last = false;
        if (t + dt >= t_end) {
            dt = t_end - t;
            last = true;
        }
        const double root = std::sqrt(h[0]) + s.froude * (s.u_in - u[0]) / 2.0;
        const double h_in = root * root;

        for (std::size_t i = 0; i <= n; ++i) {
            const double hl = i == 0 ? h_in : h[i - 1];
            const double ul = i == 0 ? s.u_in : u[i - 1];
            const double zl = i == 0 ? s.topo.front() : s.topo[i - 1];
            const double hr = i == n ? h[n - 1] : h[i];
            const double ur = i == n ? u[n - 1] : u[i];
            const double zr = i == n ? s.topo.back() : s.topo[i];
            const double z = std::max(zl, zr);
            const double al = std::max(0.0, hl + zl - z);
            const double ar = std::max(0.0, hr + zr - z);
            const double c = std::max(std::abs(ul), std::abs(ur)) + std::sqrt(g * std::max(hl, hr));
            const double F = 0.5 * (al * ul * ul + 0.5 * g * al * al + ar * ur * ur + 0.5 * g * ar * ar) -
                             0.5 * c * (ar * ur - al * ul);
            mass[i] = 0.5 * (al * ul + ar * ur) - 0.5 * c * (ar - al);
            mom_l[i] = F + 0.5 * g * (hl * hl - al * al);
            mom_r[i] = F + 0.5 * g * (hr * hr - ar * ar);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double hn = h[j] - dt / s.dx * (mass[j + 1] - mass[j]);
            const double m = h[j] * u[j] - dt / s.dx * (mom_l[j + 1] - mom_r[j]);
            // implicit linear friction: hn u' + dt (2 nu / hn) u' = m
            u[j] = m / (hn + dt * 2.0 * s.nu / hn);
            h[j] = hn;
        }
        t = last ? t_end : t + dt;
        ++res.steps;
    }
    res.h = std::move(h);
    res.u = std::move(u);
    return res;
}

}  // namespace oracle
