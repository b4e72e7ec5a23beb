#include "esw/state.hpp"

#include <cmath>

#include "esw/errors.hpp"

namespace esw {

void PhysicalParams::validate() const {
    if (!(froude > 0.0) || !std::isfinite(froude))
        throw ConfigError("physics.froude", "Froude number must be positive");
    if (!(delta_bar >= 0.0) || !std::isfinite(delta_bar))
        throw ConfigError("physics.delta_bar", "delta_bar must be non-negative");
    if (!(h_dry > 0.0)) throw ConfigError("physics.h_dry", "dry threshold must be positive");
    if (!(u_eps > 0.0)) throw ConfigError("physics.u_eps", "velocity threshold must be positive");
}

Grid1D Grid1D::uniform(double x_min, double x_max, std::size_t n_cells,
                       const std::function<double(double)>& bed) {
    if (n_cells == 0) throw ConfigError("grid.n_cells", "grid needs at least one cell");
    if (!(x_max > x_min)) throw ConfigError("grid.x_max", "x_max must exceed x_min");
    Grid1D g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n_cells = n_cells;
    g.dx = (x_max - x_min) / static_cast<double>(n_cells);
    g.cell_centers.resize(n_cells);
    g.topo.resize(n_cells, 0.0);
    for (std::size_t j = 0; j < n_cells; ++j) {
        g.cell_centers[j] = x_min + (static_cast<double>(j) + 0.5) * g.dx;
        if (bed) g.topo[j] = bed(g.cell_centers[j]);
    }
    return g;
}

Conserved from_primitive(double h, double ue, double delta1) { return {h, h * ue, delta1 * ue}; }

double displacement_thickness(const Conserved& w, const PhysicalParams& params) {
    const double ue = w.q / w.h;
    if (std::abs(ue) <= params.u_eps) return 0.0;
    return w.r / ue;
}

PrimitiveState to_primitive(const Conserved& w, const PhysicalParams& params, double shape_factor) {
    if (!(w.h > params.h_dry)) throw DryCell(0, w.h);
    const double ue = w.q / w.h;
    const double d1 = displacement_thickness(w, params);
    const double thickness = params.delta_bar * d1;
    const double H_eff = w.h - thickness;
    PrimitiveState p{};
    p.h = w.h;
    p.ue = ue;
    p.delta1 = d1;
    p.U = H_eff / w.h * ue;
    p.beta = 1.0 + (1.0 - 1.0 / shape_factor) * thickness / w.h;
    p.H_eff = H_eff;
    p.thick_layer = thickness / w.h > 0.5;
    return p;
}

PrimitiveState to_primitive(const Conserved& w, const PhysicalParams& params) {
    return to_primitive(w, params, shape_factor(params.closure, 0.0).H);
}

ApparentTopography apparent_topography_view(const Conserved& w, const PhysicalParams& params,
                                            double bed) {
    const PrimitiveState p = to_primitive(w, params);
    return {p.H_eff, p.ue, bed + params.delta_bar * p.delta1};
}

EnergyDensity energy_density(const Conserved& w, const PhysicalParams& params, double bed) {
    const PrimitiveState p = to_primitive(w, params);
    const double fr2 = params.froude * params.froude;
    const double surface = p.H_eff + bed + params.delta_bar * p.delta1;
    const double kinetic = 0.5 * p.H_eff * p.ue * p.ue;
    return {kinetic + surface * surface / (2.0 * fr2),
            p.ue * (kinetic + p.H_eff * surface * surface / (2.0 * fr2))};
}

}  // namespace esw
