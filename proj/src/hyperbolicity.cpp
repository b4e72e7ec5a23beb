#include "esw/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace esw {

JacobianCoeffs jacobian_coeffs(double ue, double r, double lambda1, double H, double dH_dlambda1) {
    // d(1/H)/dr = -H'/H^2 * 2 Lambda1 / r, d(1/H)/du_e = +H'/H^2 * 2 Lambda1 / u_e
    const double coupling = 2.0 * lambda1 * dH_dlambda1 / (H * H);
    return {r * (1.0 + 1.0 / H + coupling), ue * (1.0 + 1.0 / H - coupling)};
}

JacobianCoeffs jacobian_coeffs(const ClosureLaw& law, double ue, double r, double lambda1) {
    const ShapeFactorSlope s = shape_factor(law, lambda1);
    return jacobian_coeffs(ue, r, lambda1, s.H, s.dH_dlambda1);
}

DecoupledSpeeds decoupled_speeds(double h, double ue, double b, double froude) {
    const double c = std::sqrt(h) / froude;
    return {ue - c, ue + c, b - ue};
}

SpeedBounds nickalls_bounds(double ue, double b, double h, double froude) {
    const double spread = 2.0 * std::sqrt((2.0 * ue - b) * (2.0 * ue - b) + 3.0 * h / (froude * froude));
    return {(ue + b - spread) / 3.0, (ue + b + spread) / 3.0};
}

double p_sw(double lambda, double h, double ue, double b, double froude) {
    const double d = ue - lambda;
    return (b - ue - lambda) * (d * d - h / (froude * froude));
}

CharacteristicRoots characteristic_roots(double h, double ue, double a, double b, double froude,
                                         double delta_bar) {
    const double s2 = h / (froude * froude);
    const double c = b - ue;
    const double d = delta_bar * a / (froude * froude);

    // P_SW(lambda) - d = -(lambda^3 + A lambda^2 + B lambda + C)
    const double A = -(2.0 * ue + c);
    const double B = ue * ue - s2 + 2.0 * ue * c;
    const double C = -c * (ue * ue - s2) + d;
    const auto cubic = [&](double x) { return ((x + A) * x + B) * x + C; };
    const auto dcubic = [&](double x) { return (3.0 * x + 2.0 * A) * x + B; };

    CharacteristicRoots out;

    // Local extrema of P_SW; A^2 - 3B = (u_e - c)^2 + 3 h/Fr^2 > 0.
    const double disc_d = std::sqrt(A * A - 3.0 * B);
    const double lam_minus = (-A - disc_d) / 3.0;
    const double lam_plus = (-A + disc_d) / 3.0;
    const double p_lo = p_sw(lam_minus, h, ue, b, froude);
    const double p_hi = p_sw(lam_plus, h, ue, b, froude);
    out.margin = std::min(d - p_lo, p_hi - d);
    out.hyperbolic = p_lo < d && d < p_hi;

    // Depressed cubic t^3 + p t + q with lambda = t - A/3.
    const double shift = -A / 3.0;
    const double p = B - A * A / 3.0;
    const double q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
    const double disc = q * q / 4.0 + p * p * p / 27.0;

    std::array<double, 3> r{};
    int n = 0;
    if (p < 0.0 && disc <= 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            r[k] = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) + shift;
        n = 3;
    } else {
        const double sq = std::sqrt(std::max(disc, 0.0));
        r[0] = std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq) + shift;
        n = 1;
    }

    for (int k = 0; k < n; ++k) {
        for (int it = 0; it < 4; ++it) {
            const double f = cubic(r[k]);
            const double df = dcubic(r[k]);
            if (f == 0.0 || df == 0.0) break;
            const double step = f / df;
            if (!std::isfinite(step) || std::abs(step) > 1e-6 * (1.0 + std::abs(r[k]))) break;
            r[k] -= step;
        }
    }
    std::sort(r.begin(), r.begin() + n);
    out.roots = r;
    out.n_real = n;
    return out;
}

WaveSpeeds analyze_wave_speeds(const ClosureLaw& law, double h, double ue, double r,
                               double lambda1, double froude, double delta_bar) {
    const JacobianCoeffs jc = jacobian_coeffs(law, ue, r, lambda1);
    const DecoupledSpeeds ds = decoupled_speeds(h, ue, jc.b, froude);
    const SpeedBounds nb = nickalls_bounds(ue, jc.b, h, froude);
    return {ds.lam1, ds.lam2, ds.lam3, nb.lam_L, nb.lam_R,
            characteristic_roots(h, ue, jc.a, jc.b, froude, delta_bar)};
}

}  // namespace esw
