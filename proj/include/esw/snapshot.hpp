#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "esw/mlsw.hpp"
#include "esw/timeloop.hpp"

namespace esw {

struct SnapshotRow {
    double x;
    double fb;
    double h;
    double ue;
    double delta1;
    double tau_b;
    double H;
    double f2;
    double lambda1;
    double U;
};

using SnapshotTable = std::vector<SnapshotRow>;

inline constexpr const char* kSnapshotHeader = "x,fb,h,u_e,delta1,tau_b,H,f2,Lambda1,U";

/// Derived fields per interior cell, with the gradient taken on the same
/// ghost-extended array the solver uses.
SnapshotTable snapshot_table(const ConservedState& W, const Grid1D& grid, const SolverConfig& config);

/// Columns from the MLSW profile diagnostics; H and f2 are NaN where the profile is degenerate.
SnapshotTable snapshot_table(const mlsw::MlswState& state, const Grid1D& grid,
                             const mlsw::MlswConfig& config, GradientOrder order);

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_fixed17(double v);

void write_snapshot(std::ostream& os, const SnapshotTable& table);
void write_snapshot(const std::filesystem::path& path, const SnapshotTable& table);
/// Throws IoError on a missing file or a malformed row.
SnapshotTable read_snapshot(const std::filesystem::path& path);
SnapshotTable read_snapshot(std::istream& is);

/// Columns x,layer_index,z_mid,u; z_mid is the absolute elevation of the layer centre.
void write_profiles(const std::filesystem::path& path, const mlsw::MlswState& state,
                    const Grid1D& grid, const mlsw::LayerGrid& layers);

/// Hyperbolicity map of a snapshot: decoupled speeds, bounds, roots and margin per row.
void write_hyperbolicity_map(std::ostream& os, const SnapshotTable& table, const PhysicalParams& params);

void write_key_values(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace esw
