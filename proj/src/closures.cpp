#include "esw/closures.hpp"

#include <algorithm>
#include <cmath>

#include "esw/errors.hpp"

namespace esw {

namespace {

constexpr double kFsBlasiusH = 2.59;
constexpr double kFsDecay = 0.37;
constexpr double kFsLambdaLimit = 0.6;
constexpr double kFsLimitH = 2.074;

constexpr double kPohlhausenLambdaMax = 12.0;

double clamp_lambda1(double lambda1) {
    return std::clamp(lambda1, kLambda1Min, kLambda1Max);
}

// delta1 / Delta, alpha2 = delta2 / Delta, and their Lambda derivatives.
double pohl_alpha1(double L) { return 3.0 / 10.0 - L / 120.0; }
double pohl_alpha2(double L) { return 37.0 / 315.0 - L / 945.0 - L * L / 9072.0; }
double pohl_lambda1(double L) {
    const double s = (36.0 - L) / 120.0;
    return s * s * L;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

FixedProfile make_fixed_profile(double shape_factor, double friction_factor) {
    if (!(shape_factor >= 1.0) || !std::isfinite(shape_factor))
        throw DomainError("fixed profile requires H >= 1");
    if (!std::isfinite(friction_factor))
        throw DomainError("fixed profile requires a finite f2");
    return FixedProfile{shape_factor, friction_factor};
}

std::string closure_name(const ClosureLaw& law) {
    return std::visit(overloaded{
                          [](const FalknerSkanFit&) { return std::string("falkner_skan"); },
                          [](const BlasiusConstant&) { return std::string("blasius"); },
                          [](const FixedProfile&) { return std::string("fixed"); },
                          [](const Pohlhausen4&) { return std::string("pohlhausen4"); },
                      },
                      law);
}

double shape_factor_fs(double lambda1) {
    const double l = clamp_lambda1(lambda1);
    if (l < kFsLambdaLimit) return kFsBlasiusH * std::exp(-kFsDecay * l);
    return kFsLimitH;
}

double friction_factor_fs(double H) { return 1.05 * (4.0 / (H * H) - 1.0 / H); }

PohlhausenFactors pohlhausen4_factors(double Lambda) {
    if (!(Lambda <= kPohlhausenLambdaMax))
        throw DomainError("Pohlhausen parameter must satisfy Lambda <= 12");
    const double a1 = pohl_alpha1(Lambda);
    const double a2 = pohl_alpha2(Lambda);
    const double H = a1 / a2;
    const double wall_slope = 2.0 + Lambda / 6.0;  // phi'(0)
    return {pohl_lambda1(Lambda), H, a1 * wall_slope / H};
}

double pohlhausen4_profile(double Lambda, double xi) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("profile coordinate outside [0, 1]");
    const double m = 1.0 - xi;
    return (2.0 * xi - 2.0 * xi * xi * xi + xi * xi * xi * xi) + Lambda / 6.0 * xi * m * m * m;
}

double pohlhausen4_lambda(double lambda1) {
    if (lambda1 >= pohl_lambda1(kPohlhausenLambdaMax)) return kPohlhausenLambdaMax;
    // Lambda1(Lambda) is increasing on (-inf, 12]; grow the lower bracket as needed.
    double lo = -24.0;
    while (pohl_lambda1(lo) > lambda1) lo *= 2.0;
    double hi = kPohlhausenLambdaMax;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (pohl_lambda1(mid) < lambda1)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> ue_gradient(std::span<const double> ue, double dx, GradientOrder order) {
    const std::size_t n = ue.size();
    const std::size_t min_len = order == GradientOrder::Fourth ? 5 : 3;
    if (n < min_len) throw DomainError("ue_gradient: array too short for the requested stencil");
    if (!(dx > 0.0)) throw DomainError("ue_gradient: dx must be positive");

    std::vector<double> g(n);
    const auto forward = [&](std::size_t j) {
        return (-3.0 * ue[j] + 4.0 * ue[j + 1] - ue[j + 2]) / (2.0 * dx);
    };
    const auto backward = [&](std::size_t j) {
        return (3.0 * ue[j] - 4.0 * ue[j - 1] + ue[j - 2]) / (2.0 * dx);
    };

    if (order == GradientOrder::Second) {
        g[0] = forward(0);
        g[n - 1] = backward(n - 1);
        for (std::size_t j = 1; j + 1 < n; ++j) g[j] = (ue[j + 1] - ue[j - 1]) / (2.0 * dx);
        return g;
    }

    g[0] = forward(0);
    g[1] = forward(1);
    g[n - 2] = backward(n - 2);
    g[n - 1] = backward(n - 1);
    for (std::size_t j = 2; j + 2 < n; ++j)
        g[j] = (ue[j - 2] - 8.0 * ue[j - 1] + 8.0 * ue[j + 1] - ue[j + 2]) / (12.0 * dx);
    return g;
}

ShapeFactorSlope shape_factor(const ClosureLaw& law, double lambda1) {
    return std::visit(
        overloaded{
            [&](const FalknerSkanFit&) {
                const double H = shape_factor_fs(lambda1);
                const bool saturated = lambda1 >= kFsLambdaLimit || lambda1 < kLambda1Min ||
                                       lambda1 > kLambda1Max;
                return ShapeFactorSlope{H, friction_factor_fs(H), saturated ? 0.0 : -kFsDecay * H};
            },
            [](const BlasiusConstant&) {
                return ShapeFactorSlope{BlasiusConstant::shape_factor,
                                        BlasiusConstant::friction_factor, 0.0};
            },
            [](const FixedProfile& p) {
                return ShapeFactorSlope{p.shape_factor, p.friction_factor, 0.0};
            },
            [&](const Pohlhausen4&) {
                const double L = pohlhausen4_lambda(clamp_lambda1(lambda1));
                const PohlhausenFactors f = pohlhausen4_factors(L);
                double slope = 0.0;
                const double dl1 = (36.0 - L) * (36.0 - 3.0 * L) / 14400.0;
                if (dl1 > 1e-12 && lambda1 >= kLambda1Min && lambda1 <= kLambda1Max) {
                    const double a1 = pohl_alpha1(L);
                    const double a2 = pohl_alpha2(L);
                    const double da1 = -1.0 / 120.0;
                    const double da2 = -1.0 / 945.0 - 2.0 * L / 9072.0;
                    slope = (da1 * a2 - a1 * da2) / (a2 * a2) / dl1;
                }
                return ShapeFactorSlope{f.H, f.f2, slope};
            },
        },
        law);
}

ClosureEvaluation evaluate_closure(const ClosureLaw& law, double delta1, double ue, double dudx) {
    const double lambda1 = delta1 * delta1 * dudx;
    const ShapeFactorSlope s = shape_factor(law, lambda1);
    const double tau = s.f2 * s.H * ue / std::max(delta1, kDelta1Floor);
    return {lambda1, s.H, s.f2, tau};
}

}  // namespace esw
