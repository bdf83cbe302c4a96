#pragma once

// Vector orders on distance profiles and farness vectors, sufficient
// conditions for ordering two nodes by decay centrality, and the maximizer
// sets of degree, closeness and decay centrality.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "decaycent/centrality.hpp"
#include "decaycent/delta_grid.hpp"
#include "decaycent/graph.hpp"
#include "decaycent/wide_int.hpp"

namespace decaycent {

enum class Relation { greater, less, equal, incomparable };

enum class Rule {
    lexicographic,             // first differing coordinate
    lexicographic_closeness,   // lexicographic on reciprocals of a farness vector
    unsorted_dominance,        // all prefix sums
    distance_dominance,        // D_i >UD D_j => DC_i > DC_j on (0,1)
    farness_dominance,         // F_j >UD F_i => DC_i > DC_j on (0,1)
};

std::string_view to_string(Relation r);
std::string_view to_string(Rule r);

Relation reversed(Relation r);

struct ComparisonVerdict {
    Relation relation = Relation::equal;
    Rule rule = Rule::lexicographic;
    /// First differing index (lexicographic), first strict prefix
    /// (dominance, greater/less), or first prefix that contradicts the
    /// leading direction (dominance, incomparable).
    std::optional<std::size_t> witness;
};

/// Lexicographic order; never `incomparable`. Throws std::invalid_argument
/// on length mismatch.
ComparisonVerdict lex_compare(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
ComparisonVerdict lex_compare(std::span<const WideInt> a, std::span<const WideInt> b);

/// Lexicographic order of the closeness vectors C = 1/F (0 where F = 0),
/// decided from the farness vectors in exact integer arithmetic.
ComparisonVerdict lex_compare_cvec(std::span<const WideInt> fi, std::span<const WideInt> fj);

/// Unsorted dominance: a > b iff every prefix sum of a is >= the matching
/// prefix sum of b, with at least one strict.
ComparisonVerdict ud_compare(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
ComparisonVerdict ud_compare(std::span<const WideInt> a, std::span<const WideInt> b);

/// `greater` certifies DC_i > DC_j for every delta in (0,1), `less` the
/// reverse, `equal` identical profiles; `incomparable` means the dominance
/// test is silent, not that the decay curves cross.
ComparisonVerdict check_distance_dominance(const DistanceProfile& pi, const DistanceProfile& pj);

/// `greater` (node i ahead for every delta) iff F_j >UD F_i.
ComparisonVerdict check_farness_dominance(std::span<const WideInt> fi, std::span<const WideInt> fj);

/// Which of a family of sufficient conditions hold. `applicable` is false
/// when the sign precondition fails, in which case `satisfied` is empty.
struct ConditionReport {
    bool applicable = false;
    std::vector<int> satisfied;

    bool fired() const { return !satisfied.empty(); }
    bool holds(int id) const;
};

/// Degree-advantage conditions: with A_1 = D_i - D_j > 0, each of the four
/// conditions certifies DC_i > DC_j on (0, 1/2].
///   1: 2 A_1 >= (n-1) - D_j
///   2: 4 A_1 + 2 A_2 >= (n-1) - (D_j + D_j^2)
///   3: A_1 >= max_{l>=2} |A_l|
///   4: A_1 >= max_{k=2..n-2} |A_1 + ... + A_k|
ConditionReport check_lower_half(const DistanceProfile& pi, const DistanceProfile& pj);

/// Farness-advantage conditions: with B_1 = F_i - F_j < 0, each condition
/// certifies DC_i > DC_j on [1/2, 1).
///   1: |B_1| >= max_{l>=2} |B_l|
///   2: |B_1| >= max_{k=2..n-2} |B_1 + ... + B_k|
ConditionReport check_upper_half(std::span<const WideInt> fi, std::span<const WideInt> fj);

struct MaximizerSets {
    std::vector<NodeId> i_deg;
    std::vector<NodeId> i_clos;
    /// i_dc[k] = argmax of DC at grid point k
    std::vector<std::vector<NodeId>> i_dc;
};

/// Nodes with maximum degree.
std::vector<NodeId> degree_maximizers(std::span<const DistanceProfile> profiles);

/// Nodes with maximum closeness (minimum farness), exact.
std::vector<NodeId> closeness_maximizers(std::span<const DistanceProfile> profiles);

/// Exact argmax of DC at `delta`, given the double-precision values in
/// `values` (values[v] = DC_v(delta)). Values further than 1e-9 (relative)
/// below the maximum are discarded outright; the remaining candidates are
/// ranked with compare_decay, so two nodes tie only when their decay
/// centralities are exactly equal.
std::vector<NodeId> decay_maximizers(std::span<const DistanceProfile> profiles,
                                     std::span<const double> values, double delta);

MaximizerSets maximizer_sets(std::span<const DistanceProfile> profiles, const DeltaGrid& grid);
MaximizerSets maximizer_sets(const Graph& g, const DeltaGrid& grid);

/// -1, 0, +1 according to DC_u vs DC_v at delta, exact; `values` is used as
/// a fast filter.
int compare_at(std::span<const DistanceProfile> profiles, std::span<const double> values, double delta,
               NodeId u, NodeId v);

/// Tolerance used to short-cut exact comparisons of decay values.
double decay_tie_tolerance(double scale);

}  // namespace decaycent
