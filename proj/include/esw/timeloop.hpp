#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include "esw/errors.hpp"
#include "esw/riemann.hpp"
#include "esw/state.hpp"

namespace esw {

// ---------------------------------------------------------------------------
// Boundary conditions
// ---------------------------------------------------------------------------

/// Imposed velocity and flat profile; depth from the characteristic leaving the domain.
struct SubcriticalInflow {
    double u_in = 1.0;
};

/// Imposed velocity, depth and flat profile.
struct SupercriticalInflow {
    double u_in = 1.0;
    double h_in = 1.0;
};

/// Zero-gradient extrapolation.
struct FreeOutflow {};

/// Subcritical outlet that takes the incoming invariant u - 2 sqrt(h)/Fr from a
/// far-field state; delta1 is extrapolated. Falls back to zero gradient when the
/// last cell is supercritical.
struct FarFieldOutflow {
    double h_far = 2.0;
    double u_far = 1.0;
};

using LeftBoundary = std::variant<SubcriticalInflow, SupercriticalInflow>;
using RightBoundary = std::variant<FreeOutflow, FarFieldOutflow>;

struct BoundarySpec {
    LeftBoundary left = SubcriticalInflow{};
    RightBoundary right = FreeOutflow{};
};

inline constexpr std::size_t kGhostCells = 2;

struct GhostCells {
    std::array<Conserved, kGhostCells> left;   ///< left[0] is the outermost ghost
    std::array<Conserved, kGhostCells> right;  ///< right[0] touches the last interior cell
    /// Set when the subcritical inflow invariant produced a non-positive depth.
    bool invalid_invariant = false;
};

GhostCells apply_boundaries(const ConservedState& interior, const BoundarySpec& spec,
                            const PhysicalParams& params);

// ---------------------------------------------------------------------------
// Run state
// ---------------------------------------------------------------------------

struct Diagnostics {
    std::size_t non_hyperbolic_cells = 0;  ///< count at the last hyperbolicity check
    double worst_margin = 0.0;             ///< smallest margin at the last check
    std::size_t star_fallbacks = 0;        ///< cumulative
    std::size_t near_critical = 0;         ///< cumulative
    std::size_t invalid_invariants = 0;    ///< cumulative
    double min_f2 = 0.0;                   ///< over the run
    double max_abs_lambda = 0.0;           ///< over the run
    /// max_j |W^{n+1} - W^n| / (max_j |W| dt), worst component, last step.
    double change_rate = 0.0;
};

struct RunState {
    double t = 0.0;
    std::size_t step_count = 0;
    ConservedState W;
    GhostCells ghosts;
    Diagnostics diag;
};

struct SolverConfig {
    PhysicalParams params;
    BoundarySpec boundaries;
    GradientOrder gradient_order = GradientOrder::Fourth;
    double cfl_number = 0.9;
    double dt_max = 1e-2;
    /// Progress line to the log stream every N steps; 0 disables.
    std::size_t log_every = 0;
    std::ostream* log = nullptr;
};

/// Raised by advance() on any fatal numerical error; carries the last good state.
class NumericalFailure : public Error {
public:
    NumericalFailure(const std::string& what, RunState last);
    const RunState& last_state() const noexcept { return last_; }

private:
    RunState last_;
};

// ---------------------------------------------------------------------------
// Step pieces
// ---------------------------------------------------------------------------

/// Ghost-extended view of a step: n + 4 cells, index k = j + 2.
struct StepFields {
    std::vector<CellData> cells;
    std::vector<double> topo;
    GhostCells ghosts;
};

/// Boundaries, d(u_e)/dx and closure evaluation for the current state.
StepFields prepare_step(const ConservedState& interior, const Grid1D& grid,
                        const SolverConfig& config);

/// cfl * dx / (2 max|lambda|), further limited in reverse-flow cells by the
/// discriminant condition of the friction update, and by dt_max.
double compute_dt(const std::vector<CellData>& cells, double dx, double cfl_number, double dt_max);

struct ConvectionResult {
    ConservedState W;
    std::size_t fallbacks = 0;
    std::size_t near_critical = 0;
};

/// First-order update W_j - dt/dx (F^L_{j+1/2} - F^R_{j-1/2}) over the interior cells.
ConvectionResult convection_step(const StepFields& fields, double dx, double dt,
                                 const PhysicalParams& params);

/// Semi-implicit update of delta1 with (f2 H) frozen at the start of the step.
/// `f2H` holds one value per interior cell.
void friction_step(ConservedState& W, const std::vector<double>& f2H, double dt,
                   const PhysicalParams& params);

/// Closed-form root of delta1 (delta1 - d_half) = f2H dt; throws NegativeDiscriminant.
double friction_update(double delta1_half, double f2H, double dt);

struct AdvanceCallbacks {
    /// Times at which on_snapshot fires (end-of-step states); hit exactly.
    std::vector<double> snapshot_times;
    std::function<void(const RunState&)> on_snapshot;
    /// Called after each step; returning false stops the loop early.
    std::function<bool(const RunState&)> on_step;
};

/// Runs boundaries -> dt -> convection -> friction until t_end.
RunState advance(RunState run, const Grid1D& grid, const SolverConfig& config, double t_end,
                 const AdvanceCallbacks& callbacks = {});

/// Count of non-hyperbolic interior cells and the worst margin for a state.
std::pair<std::size_t, double> hyperbolicity_census(const StepFields& fields,
                                                    const PhysicalParams& params);

}  // namespace esw
