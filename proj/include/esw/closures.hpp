#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace esw {

// ---------------------------------------------------------------------------
// Closure laws
// ---------------------------------------------------------------------------

/// Exponential fit of the Falkner-Skan similarity family: H(Lambda1), f2(H).
struct FalknerSkanFit {};

/// Frozen Blasius profile, H = 2.59 and f2 = 0.22.
struct BlasiusConstant {
    static constexpr double shape_factor = 2.59;
    static constexpr double friction_factor = 0.22;
};

/// User supplied constant profile. Build through make_fixed_profile().
struct FixedProfile {
    double shape_factor;
    double friction_factor;
};

/// Fourth-order Pohlhausen polynomial, parameterised by Lambda at evaluation time.
struct Pohlhausen4 {};

using ClosureLaw = std::variant<FalknerSkanFit, BlasiusConstant, FixedProfile, Pohlhausen4>;

/// Throws DomainError unless H >= 1 and f2 is finite.
FixedProfile make_fixed_profile(double shape_factor, double friction_factor);

std::string closure_name(const ClosureLaw& law);

/// Range Lambda1 is clamped to before it enters a closure formula.
inline constexpr double kLambda1Min = -20.0;
inline constexpr double kLambda1Max = 10.0;
/// Floor on delta1 in the wall-shear diagnostic tau = f2 H u_e / delta1.
inline constexpr double kDelta1Floor = 1e-12;

struct ClosureEvaluation {
    double lambda1;  ///< delta1^2 * d(u_e)/dx, as computed (not clamped)
    double H;
    double f2;
    double tau_bar;
};

/// Shape factor together with its slope dH/dLambda1; the slope feeds the
/// frozen-gradient Jacobian of the viscous-layer flux.
struct ShapeFactorSlope {
    double H;
    double f2;
    double dH_dlambda1;
};

// ---------------------------------------------------------------------------
// Falkner-Skan fit
// ---------------------------------------------------------------------------

/// H = 2.59 exp(-0.37 Lambda1) below Lambda1 = 0.6, 2.074 above.
double shape_factor_fs(double lambda1);

/// f2 = 1.05 (4/H^2 - 1/H). Negative values signal reverse flow.
double friction_factor_fs(double H);

// ---------------------------------------------------------------------------
// Pohlhausen fourth-order profile
// ---------------------------------------------------------------------------

struct PohlhausenFactors {
    double lambda1;
    double H;
    double f2;
};

/// Closed-form (Lambda1, H, f2) of the quartic profile. Throws DomainError for Lambda > 12.
PohlhausenFactors pohlhausen4_factors(double Lambda);

/// phi(xi) = 2xi - 2xi^3 + xi^4 + (Lambda/6) xi (1 - xi)^3 on [0, 1].
double pohlhausen4_profile(double Lambda, double xi);

/// Inverse of Lambda1(Lambda) = ((36 - Lambda)/120)^2 Lambda on Lambda <= 12.
/// Values above the physical limit 0.48 saturate at Lambda = 12.
double pohlhausen4_lambda(double lambda1);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

enum class GradientOrder { Second = 2, Fourth = 4 };

/// Cell-centred d(u_e)/dx. Centred stencils in the interior, one-sided
/// second-order differences on the two cells next to each end.
std::vector<double> ue_gradient(std::span<const double> ue, double dx, GradientOrder order);

ShapeFactorSlope shape_factor(const ClosureLaw& law, double lambda1);

ClosureEvaluation evaluate_closure(const ClosureLaw& law, double delta1, double ue, double dudx);

}  // namespace esw
