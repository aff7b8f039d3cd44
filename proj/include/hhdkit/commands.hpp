#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hhdkit/report.hpp"
#include "hhdkit/stability.hpp"

namespace hhdkit {

/// CLI exit-code contract: 0 decomposition produced, 1 input error,
/// 2 requested decomposition does not exist / solver failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNoDecomposition = 2;

struct CommonOptions {
    /// Strictness/report tolerance; the solver keeps its own tighter default.
    double tol = 1e-9;
    /// Riccati exploration seed (switches the solver to plain Newton).
    std::optional<RealMatrix> seed;
};

struct CommandResult {
    int exit_code = kExitOk;
    DecompositionReport report;
};

/// Decompose the field described by the input document. Linear fields fall
/// back to the symmetric split (reported as non-strict) when the Riccati
/// solve fails; homogeneous quadratic fields are strict-or-nothing.
CommandResult cmd_decompose(const nlohmann::json& doc, const CommonOptions& opts = {});

/// Decompose a linear field and express the result as an SDE decomposition
/// F = -(D + Q) U. The document may carry "d_matrix" (default identity) and
/// "p_matrix" (pin the gradient part of the HHD instead of solving).
CommandResult cmd_sde(const nlohmann::json& doc, const CommonOptions& opts = {});

/// Everything the Van der Pol case study emits, before file formatting.
struct VdpArtifacts {
    VdpCaseStudy study;
    std::vector<LevelContours> level_sets;
    std::vector<Point2> gamma_points;
    std::vector<Point2> nullcline_points;
    std::vector<double> wdot_values;  ///< row-major over grid nodes
};

VdpArtifacts run_vdp_case_study(double mu, const GridSpec& grid,
                                const std::vector<double>& levels);

/// Write levelsets.csv, gamma.csv, nullcline.csv, wdot_sign.csv, overlay.svg
/// and report.json into out_dir. Bytes are deterministic for fixed inputs.
void write_vdp_files(const VdpArtifacts& artifacts, const std::string& out_dir);

}  // namespace hhdkit
