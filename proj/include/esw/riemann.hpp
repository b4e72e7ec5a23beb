#pragma once

#include "esw/state.hpp"

namespace esw {

/// Per-cell quantities frozen for the duration of one convection step.
struct CellData {
    Conserved w;
    double ue = 0.0;
    double delta1 = 0.0;
    double lambda1 = 0.0;
    double H = 0.0;
    double f2 = 0.0;
    /// Nickalls bounds of this cell alone.
    double lam_L = 0.0;
    double lam_R = 0.0;
    /// Jacobian coefficient a of the viscous flux (hyperbolicity diagnostics).
    double a = 0.0;
    double b = 0.0;
};

/// Evaluates closure, Jacobian coefficients and wave-speed bounds for one cell.
CellData prepare_cell(const Conserved& w, double dudx, const PhysicalParams& params);

/// Physical flux (h u_e - delta_bar r, h u_e^2 + h^2/(2 Fr^2), (1 + 1/H) r u_e).
Conserved physical_flux(const CellData& c, const PhysicalParams& params);

struct SourceAverages {
    double topo_src;      ///< (h_L + h_R)/(2 Fr^2) [f_b]
    double exchange_src;  ///< ((hu)_L + (hu)_R)/(h_L + h_R) [delta1 u_e]
};

SourceAverages source_averages(const Conserved& left, const Conserved& right, double jump_fb,
                               double froude);

struct RiemannFan {
    double lam_L;
    double lam_R;
    double q_star;
    double r_star;
    double h_L_star;
    double h_R_star;
    Conserved F_left;   ///< flux seen by the cell on the left of the interface
    Conserved F_right;  ///< flux seen by the cell on the right of the interface
    /// Star depths came from the equal-depth fallback instead of the Bernoulli solve.
    bool fallback = false;
    /// The Bernoulli solve was close to criticality (|dg/dh| tiny).
    bool near_critical = false;
};

/// Three-wave approximate Riemann solver with a stationary contact carrying [f_b].
RiemannFan solve_local_riemann(const CellData& left, const CellData& right, double jump_fb,
                               const PhysicalParams& params);

}  // namespace esw
