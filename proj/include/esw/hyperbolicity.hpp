#pragma once

#include <array>
#include <cstddef>

#include "esw/closures.hpp"

namespace esw {

/// Partial derivatives of the viscous-layer flux G = (1 + 1/H) r u_e with
/// respect to u_e (a) and r = delta1 u_e (b), d(u_e)/dx held frozen.
struct JacobianCoeffs {
    double a;
    double b;
};

JacobianCoeffs jacobian_coeffs(double ue, double r, double lambda1, double H, double dH_dlambda1);
JacobianCoeffs jacobian_coeffs(const ClosureLaw& law, double ue, double r, double lambda1);

struct DecoupledSpeeds {
    double lam1;  ///< u_e - sqrt(h)/Fr
    double lam2;  ///< u_e + sqrt(h)/Fr
    double lam3;  ///< b - u_e
};

DecoupledSpeeds decoupled_speeds(double h, double ue, double b, double froude);

struct SpeedBounds {
    double lam_L;
    double lam_R;
};

/// Closed-form interval containing every real root of the characteristic cubic.
SpeedBounds nickalls_bounds(double ue, double b, double h, double froude);

struct CharacteristicRoots {
    std::array<double, 3> roots{};  ///< ascending; only the first n_real entries are meaningful
    int n_real = 0;
    bool hyperbolic = false;
    /// min(d - P_SW(lambda_-), P_SW(lambda_+) - d); positive inside the hyperbolic region.
    double margin = 0.0;
};

/// P_SW(lambda) = (b - u_e - lambda)((u_e - lambda)^2 - h/Fr^2).
double p_sw(double lambda, double h, double ue, double b, double froude);

/// Roots of P_SW(lambda) = delta_bar a / Fr^2.
CharacteristicRoots characteristic_roots(double h, double ue, double a, double b, double froude,
                                         double delta_bar);

/// Everything the hyperbolicity analysis knows about one state.
struct WaveSpeeds {
    double lam1_0;
    double lam2_0;
    double lam3_0;
    double lam_L;
    double lam_R;
    CharacteristicRoots full;
};

WaveSpeeds analyze_wave_speeds(const ClosureLaw& law, double h, double ue, double r,
                               double lambda1, double froude, double delta_bar);

}  // namespace esw
