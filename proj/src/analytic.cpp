#include "esw/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "esw/closures.hpp"
#include "esw/errors.hpp"

namespace esw::analytic {

namespace {
constexpr double kCriticalTol = 1e-6;
}

DisplacementShear blasius_steady(double x, double ue0, double f2H, double H) {
    if (!(x > 0.0)) throw DomainError("blasius_steady: x must be positive (leading-edge singularity)");
    if (!(ue0 > 0.0)) throw DomainError("blasius_steady: u_e0 must be positive");
    const double d1 = std::sqrt(2.0 * f2H * H * x / ue0);
    return {d1, f2H / d1};
}

DepthVelocity blasius_perturbed_steady(double x, double h0, double ue0, double froude,
                                       double delta_bar) {
    const double fr0 = froude * ue0 / std::sqrt(h0);
    if (std::abs(fr0 - 1.0) < kCriticalTol) throw CriticalFlow("blasius_perturbed_steady: Fr0 = 1");
    constexpr double H = BlasiusConstant::shape_factor;
    constexpr double f2 = BlasiusConstant::friction_factor;
    const double d1 = x > 0.0 ? blasius_steady(x, ue0, f2 * H, H).delta1 : 0.0;
    const double fr02 = fr0 * fr0;
    // Mass balance fixes the velocity correction: h0 u1 + ue0 h1 = ue0 d1.
    return {h0 + delta_bar * fr02 / (fr02 - 1.0) * d1, ue0 + delta_bar * ue0 / h0 * d1 / (1.0 - fr02)};
}

StokesSolution stokes_solution(double t) {
    if (!(t > 0.0)) throw DomainError("stokes_solution: t must be positive");
    const double pi = std::numbers::pi;
    const double H = 1.0 + std::numbers::sqrt2;
    return {2.0 * std::sqrt(t / pi), 1.0 / std::sqrt(pi * t), H, 2.0 / (pi * H)};
}

DisplacementShear stewartson_fixed_profile(double x, double t, double ue, double H, double f2) {
    if (!(x >= 0.0) || !(t > 0.0) || !(ue > 0.0))
        throw DomainError("stewartson_fixed_profile: need x >= 0, t > 0, u_e > 0");
    if (x <= ue * t / H) {
        const double d1 = std::sqrt(2.0 * f2 * H * H * x / ue);
        return {d1, x > 0.0 ? std::sqrt(f2 * ue * ue * ue / (2.0 * x))
                            : std::numeric_limits<double>::infinity()};
    }
    return {std::sqrt(2.0 * f2 * H * t), std::sqrt(f2 * H * ue * ue / (2.0 * t))};
}

BumpResponse linearized_bump(std::span<const double> fb, double h0, double U0, double froude,
                             double beta) {
    const double fr02 = beta * U0 * U0 * froude * froude / h0;
    if (std::abs(std::sqrt(fr02) - 1.0) < kCriticalTol)
        throw CriticalFlow("linearized_bump: Fr0 = 1");
    BumpResponse out;
    out.h.reserve(fb.size());
    out.U.reserve(fb.size());
    for (double f : fb) {
        out.h.push_back(h0 + f / (fr02 - 1.0));
        out.U.push_back(U0 + U0 / h0 * f / (1.0 - fr02));
    }
    return out;
}

double gaussian_bump(double x, double alpha, double sigma, double center) {
    if (!(sigma > 0.0)) throw DomainError("gaussian_bump: sigma must be positive");
    const double d = x - center;
    return alpha * std::exp(-d * d / (2.0 * sigma * sigma));
}

double l1_error(const ReferenceCurve& numeric, const ReferenceCurve& reference, double dx,
                std::size_t skip_leading) {
    if (numeric.values.size() != reference.values.size() ||
        numeric.abscissae.size() != reference.abscissae.size() ||
        numeric.values.size() != numeric.abscissae.size())
        throw MismatchedGrids("l1_error: curves are sampled on different grids");
    for (std::size_t i = 0; i < numeric.abscissae.size(); ++i)
        if (numeric.abscissae[i] != reference.abscissae[i])
            throw MismatchedGrids("l1_error: abscissae differ");
    double sum = 0.0;
    for (std::size_t i = skip_leading; i < numeric.values.size(); ++i)
        sum += std::abs(numeric.values[i] - reference.values[i]);
    return dx * sum;
}

}  // namespace esw::analytic
