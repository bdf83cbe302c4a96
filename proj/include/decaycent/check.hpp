#pragma once

// Randomized self-test over small connected graphs: BFS against
// Floyd-Warshall, the factored difference identities, the ordering of
// closeness vectors, and soundness of every sufficient condition on a fine
// delta grid.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace decaycent {

enum class Mutant {
    none,
    /// Higher-order farness computed with one binomial term of the wrong sign.
    flip_binomial_sign,
};

struct CheckOptions {
    std::size_t n_min = 5;
    std::size_t n_max = 12;
    std::uint64_t graphs = 200;
    std::uint64_t seed = 1;
    /// Fine grid for soundness checks: k/(points+1).
    std::size_t soundness_points = 999;
    Mutant mutant = Mutant::none;

    void validate() const;
};

struct PropertyResult {
    std::string name;
    /// Limit-ordering properties can fail on adversarial graphs without a bug;
    /// they are reported but do not fail the run.
    bool advisory = false;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    /// First failing case: graph edge list, nodes, delta.
    std::optional<nlohmann::json> counterexample;

    bool passed() const { return failures == 0; }
};

struct CheckReport {
    std::uint64_t graphs = 0;          // graphs actually tested
    std::uint64_t skipped_graphs = 0;  // generation gave up
    std::vector<PropertyResult> properties;

    /// True when no non-advisory property failed.
    bool passed() const;
    const PropertyResult* find(const std::string& name) const;
};

CheckReport run_checks(const CheckOptions& options);

nlohmann::json to_json(const CheckReport& report);

}  // namespace decaycent
