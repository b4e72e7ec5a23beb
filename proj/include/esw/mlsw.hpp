#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "esw/state.hpp"
#include "esw/timeloop.hpp"

/// Multilayer Saint-Venant reference solver: the vertical discretisation of the
/// reduced Navier-Stokes/Prandtl system by N layers of fixed relative thickness.
namespace esw::mlsw {

struct LayerGrid {
    /// l_alpha, bottom layer first; sums to one.
    std::vector<double> fractions;
    /// Interface levels z_alpha as fractions of the depth, size N + 1.
    std::vector<double> levels;

    std::size_t size() const { return fractions.size(); }

    /// z_alpha = (exp(stretch alpha/N) - 1)/(exp(stretch) - 1).
    static LayerGrid exponential(std::size_t n_layers = 100, double stretch = 10.0);
    static LayerGrid uniform(std::size_t n_layers);
    static LayerGrid from_fractions(std::vector<double> fractions);
};

class MlswState {
public:
    MlswState() = default;
    MlswState(std::size_t n_cells, std::size_t n_layers);

    std::size_t n_cells() const { return h.size(); }
    std::size_t n_layers() const { return n_layers_; }

    double& u(std::size_t cell, std::size_t layer) { return u_[cell * n_layers_ + layer]; }
    double u(std::size_t cell, std::size_t layer) const { return u_[cell * n_layers_ + layer]; }
    std::span<double> column(std::size_t cell) { return {u_.data() + cell * n_layers_, n_layers_}; }
    std::span<const double> column(std::size_t cell) const {
        return {u_.data() + cell * n_layers_, n_layers_};
    }

    /// Layer-summed discharge divided by h.
    double mean_velocity(std::size_t cell, const LayerGrid& layers) const;

    std::vector<double> h;

private:
    std::size_t n_layers_ = 0;
    std::vector<double> u_;
};

/// Uniform depth h0 and uniform velocity u0 in every layer.
MlswState uniform_state(std::size_t n_cells, const LayerGrid& layers, double h0, double u0);

struct MlswConfig {
    PhysicalParams params;
    LayerGrid layers = LayerGrid::exponential();
    BoundarySpec boundaries;
    double cfl_number = 0.9;
    double dt_max = 1e-2;
};

/// cfl dx / (2 max(|u_alpha| + sqrt(h)/Fr)).
double mlsw_dt(const MlswState& state, double dx, double cfl_number, double froude, double dt_max);

/// Transport of every layer with a local Lax-Friedrichs flux over a hydrostatic
/// reconstruction of the bed, explicit fixed-fraction mass/momentum exchange,
/// then the implicit vertical friction solve.
MlswState mlsw_step(const MlswState& state, double dt, const Grid1D& grid, const MlswConfig& config);

/// Implicit viscous exchange on a single column. Returns the bottom stress
/// tau_b = delta_bar^2 2 u_1/h_1 evaluated with the updated velocity.
double vertical_friction(std::span<double> u, double h, const LayerGrid& layers, double delta_bar,
                         double dt);

/// Thomas algorithm; throws TridiagonalFailure on a vanishing pivot.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs);

struct ProfileDiagnostics {
    double ue;
    double delta1;
    double delta2;
    double H;
    double f2;
    double tau_bar;
};

/// Integral thicknesses and closure factors recovered from one column.
ProfileDiagnostics mlsw_diagnostics(std::span<const double> u, double h, const LayerGrid& layers,
                                    const PhysicalParams& params);

struct MlswRun {
    double t = 0.0;
    std::size_t step_count = 0;
    MlswState state;
};

MlswRun advance(MlswRun run, const Grid1D& grid, const MlswConfig& config, double t_end,
                const std::vector<double>& snapshot_times = {},
                const std::function<void(const MlswRun&)>& on_snapshot = {});

}  // namespace esw::mlsw
