#pragma once

#include <span>
#include <string>
#include <vector>

namespace esw::analytic {

/// Sampled reference or numerical curve.
struct ReferenceCurve {
    std::vector<double> abscissae;
    std::vector<double> values;
    std::string label;
};

struct DisplacementShear {
    double delta1;
    double tau;
};

/// Steady flat-plate solution delta1 = sqrt(2 f2 H^2 x / u_e0), tau = f2 H / delta1.
DisplacementShear blasius_steady(double x, double ue0, double f2H, double H);

struct DepthVelocity {
    double h;
    double ue;
};

/// First-order (in delta_bar) steady perturbation of a uniform stream by the Blasius layer.
/// Uses the Blasius constants H = 2.59, f2 = 0.22.
DepthVelocity blasius_perturbed_steady(double x, double h0, double ue0, double froude,
                                       double delta_bar);

struct StokesSolution {
    double delta1;
    double tau;
    double H;
    double f2;
};

/// Impulsively started plate (Rayleigh problem), erf profile.
StokesSolution stokes_solution(double t);

/// Characteristic solution of d(delta1^2)/dt + (u_e/H) d(delta1^2)/dx = 2 f2 H with
/// delta1 = 0 initially and at the inlet.
DisplacementShear stewartson_fixed_profile(double x, double t, double ue, double H, double f2);

struct BumpResponse {
    std::vector<double> h;
    std::vector<double> U;
};

/// Linearised steady frictionless shallow water over a small bed perturbation.
BumpResponse linearized_bump(std::span<const double> fb, double h0, double U0, double froude,
                             double beta);

double gaussian_bump(double x, double alpha, double sigma, double center = 1.0);

/// dx * sum |numeric - reference|, skipping the first `skip_leading` samples
/// (the inlet cell carries the leading-edge singularity).
double l1_error(const ReferenceCurve& numeric, const ReferenceCurve& reference, double dx,
                std::size_t skip_leading = 1);

}  // namespace esw::analytic
