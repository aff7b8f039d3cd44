#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hhdkit/linear_hhd.hpp"
#include "hhdkit/planar_hhd.hpp"
#include "hhdkit/sde_bridge.hpp"

namespace hhdkit {

/// Machine-readable result of a decomposition command. Round-trips through
/// JSON exactly (doubles are emitted with full precision).
struct DecompositionReport {
    std::string command;
    nlohmann::json input_echo;
    bool strictly_orthogonal = false;
    std::optional<std::string> failure_reason;

    std::optional<LinearHhd> linear;
    std::optional<RiccatiReport> diagnostics;

    std::optional<PlanarHhd> planar;
    std::optional<double> defect_norm;

    std::optional<SdeDecomposition> sde;

    nlohmann::json to_json() const;
    static DecompositionReport from_json(const nlohmann::json& j);
};

bool operator==(const DecompositionReport& a, const DecompositionReport& b);

}  // namespace hhdkit
