#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clusterfid/teleport.hpp"

namespace cfid::verify {

struct CheckResult {
    std::string id;
    std::string group;  // teleport | analytics | bench | refocus | cli
    std::string description;
    bool pass = false;
    std::string details;
};

// Runs the acceptance checks whose id or group contains `only` (all when
// empty), in order, each at its pinned tolerance.
std::vector<CheckResult> run_acceptance(const std::string& only = "");

// Worst |F - 1| over the identity-gate sweep (eps = 0) for one interaction,
// taking both the weighted fidelity and every branch fidelity into account.
// `variant_override` exists so a deliberately wrong byproduct can be shown
// to trip the check.
double identity_worst_deviation(InteractionKind kind, const std::vector<int>& n_list,
                                int directions_per_n,
                                std::optional<ByproductVariant> variant_override = std::nullopt);

}  // namespace cfid::verify
