#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "esw/closures.hpp"

namespace esw {

/// Dimensionless physical parameters of a run.
struct PhysicalParams {
    double froude = 1.0;
    /// Viscous-layer scale, Re_h^{-1/2}. Zero recovers inviscid shallow water.
    double delta_bar = 1e-3;
    ClosureLaw closure = FalknerSkanFit{};
    /// Depth at or below which a cell counts as dry.
    double h_dry = 1e-12;
    /// Below this |u_e| the displacement thickness is reset to zero.
    double u_eps = 1e-8;

    /// Throws ConfigError when froude <= 0 or delta_bar < 0.
    void validate() const;
};

/// Uniform 1-D grid with topography sampled at cell centres.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n_cells = 0;
    double dx = 0.0;
    std::vector<double> cell_centers;
    std::vector<double> topo;

    static Grid1D uniform(double x_min, double x_max, std::size_t n_cells,
                          const std::function<double(double)>& bed = {});
};

/// Conserved unknowns of one cell: W = (h, h u_e, delta1 u_e).
struct Conserved {
    double h = 0.0;
    double q = 0.0;
    double r = 0.0;

    friend Conserved operator+(Conserved a, const Conserved& b) {
        return {a.h + b.h, a.q + b.q, a.r + b.r};
    }
    friend Conserved operator-(Conserved a, const Conserved& b) {
        return {a.h - b.h, a.q - b.q, a.r - b.r};
    }
    friend Conserved operator*(double s, const Conserved& a) { return {s * a.h, s * a.q, s * a.r}; }
    friend bool operator==(const Conserved&, const Conserved&) = default;
};

using ConservedState = std::vector<Conserved>;

struct PrimitiveState {
    double h;
    double ue;
    double delta1;
    /// Depth-averaged velocity, h U = (h - delta_bar delta1) u_e.
    double U;
    /// Boussinesq coefficient, first order in delta_bar.
    double beta;
    /// Effective ideal-fluid depth h - delta_bar delta1.
    double H_eff;
    /// delta_bar delta1 / h exceeds one half: the layer decomposition is no longer meaningful.
    bool thick_layer;
};

Conserved from_primitive(double h, double ue, double delta1);

/// Displacement thickness recovered from r = delta1 u_e; zero at stagnation.
double displacement_thickness(const Conserved& w, const PhysicalParams& params);

/// Throws DryCell when h <= h_dry. `shape_factor` enters only the Boussinesq
/// coefficient; the overload without it uses the closure's value at Lambda1 = 0.
PrimitiveState to_primitive(const Conserved& w, const PhysicalParams& params, double shape_factor);
PrimitiveState to_primitive(const Conserved& w, const PhysicalParams& params);

struct ApparentTopography {
    double H_eff;
    double ue;
    double apparent_bed;
};

ApparentTopography apparent_topography_view(const Conserved& w, const PhysicalParams& params,
                                            double bed);

struct EnergyDensity {
    double energy;
    double energy_flux;
};

EnergyDensity energy_density(const Conserved& w, const PhysicalParams& params, double bed);

}  // namespace esw
