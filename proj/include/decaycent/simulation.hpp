#pragma once

// Monte-Carlo study of how the decay-centrality maximizers relate to the
// degree and closeness maximizers on connected G(n,p) graphs.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "decaycent/delta_grid.hpp"
#include "decaycent/generation.hpp"
#include "decaycent/graph.hpp"

namespace decaycent {

/// Relations between I_dc and (I_deg, I_clos) at one grid point, plus ranks.
/// Ranks are competition ranks, 1 + #{u : DC_u > DC_v}, exact.
struct DeltaOutcome {
    bool dc_subset_deg = false;
    bool dc_subset_clos = false;
    bool dc_disjoint_both = false;          // I_dc misses I_deg and I_clos entirely
    bool dc_subset_intersection = false;    // I_dc inside I_deg and I_clos
    std::uint32_t dc_size = 0;
    std::uint32_t best_rank_maxdeg = 0;     // best rank among I_deg
    std::uint32_t best_rank_maxclos = 0;
    double mean_rank_maxdeg = 0.0;          // average rank over I_deg
    double mean_rank_maxclos = 0.0;
    NodeId rule_of_thumb_pick = 0;
    std::uint32_t rule_of_thumb_rank = 0;

    /// I_dc meets I_deg or I_clos but lies inside neither.
    bool mixed() const { return !dc_subset_deg && !dc_subset_clos && !dc_disjoint_both; }
};

struct TrialRecord {
    std::uint64_t trial_index = 0;
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t rejects = 0;
    std::vector<NodeId> i_deg;
    std::vector<NodeId> i_clos;
    bool deg_clos_intersect = false;
    /// I_deg and I_clos intersect, yet at some grid point I_dc is not inside
    /// the intersection.
    bool escapes_intersection = false;
    std::vector<DeltaOutcome> per_delta;
    /// Non-intersecting trials only: first grid index from which I_dc stays
    /// inside I_clos to the end of the grid, provided I_dc starts inside I_deg.
    std::optional<std::size_t> threshold_index;
    /// With a threshold: the grid pattern is (in I_deg)* (neither)* (in I_clos)*.
    bool monotone_transition = false;
    /// Monotone with no intermediate "neither" points.
    bool immediate_transition = false;
};

/// Best competition rank among `nodes` given DC values at `delta`.
std::uint32_t rank_of(std::span<const NodeId> nodes, std::span<const DistanceProfile> profiles,
                      std::span<const double> values, double delta);

/// Candidates are I_deg below 1/2, I_clos above, their union at exactly 1/2;
/// returns the candidate with the largest DC, lowest id on exact ties.
NodeId rule_of_thumb_pick(std::span<const NodeId> i_deg, std::span<const NodeId> i_clos,
                          std::span<const DistanceProfile> profiles, std::span<const double> values,
                          double delta);

/// Requires a connected graph with n >= 2. Trial metadata (index, p,
/// rejects) is left for the caller to fill in.
TrialRecord run_trial(const Graph& g, const DeltaGrid& grid);

struct RankSummary {
    double mean = 0.0;
    std::uint32_t p5 = 0;   // nearest-rank percentiles
    std::uint32_t p95 = 0;
};

struct FrequencySet {
    double subset_deg = 0.0;
    double subset_clos = 0.0;
    double disjoint_both = 0.0;
    double mixed = 0.0;
};

struct DeltaAggregate {
    double delta = 0.0;
    FrequencySet all;              // over every successful trial
    FrequencySet non_intersecting; // over trials with I_deg and I_clos disjoint
    RankSummary rank_maxdeg;
    RankSummary rank_maxclos;
    RankSummary rank_rule_of_thumb;
    double mean_member_rank_maxdeg = 0.0;
    double mean_member_rank_maxclos = 0.0;
};

struct AggregateStats {
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t trials = 0;            // successful trials
    std::uint64_t failed_trials = 0;     // generation gave up; excluded above
    std::uint64_t count_intersect = 0;
    std::uint64_t count_intersect_escape = 0;
    std::uint64_t count_non_intersecting = 0;
    std::uint64_t count_threshold = 0;
    std::uint64_t count_monotone = 0;
    std::uint64_t count_immediate = 0;
    std::vector<DeltaAggregate> per_delta;
};

/// Incremental, order-sensitive fold over trial records.
class Aggregator {
public:
    Aggregator(std::size_t n, double p, const DeltaGrid& grid);

    void add(const TrialRecord& record);
    void add_failure() { ++failed_; }

    AggregateStats finish() const;

private:
    struct Counts {
        std::uint64_t subset_deg = 0;
        std::uint64_t subset_clos = 0;
        std::uint64_t disjoint = 0;
        std::uint64_t mixed = 0;
    };

    std::size_t n_;
    double p_;
    std::vector<double> deltas_;
    std::uint64_t trials_ = 0;
    std::uint64_t failed_ = 0;
    std::uint64_t intersect_ = 0;
    std::uint64_t escape_ = 0;
    std::uint64_t threshold_ = 0;
    std::uint64_t monotone_ = 0;
    std::uint64_t immediate_ = 0;
    std::vector<Counts> all_;
    std::vector<Counts> sub_;
    std::vector<std::vector<std::uint32_t>> rank_deg_;
    std::vector<std::vector<std::uint32_t>> rank_clos_;
    std::vector<std::vector<std::uint32_t>> rank_rule_;
    std::vector<double> member_rank_deg_sum_;
    std::vector<double> member_rank_clos_sum_;
};

/// Throws std::invalid_argument on an empty list. Records must share n, p
/// and the grid.
AggregateStats aggregate(std::span<const TrialRecord> records, const DeltaGrid& grid);

/// Nearest-rank percentile (0 < pct <= 100) of an unsorted sample.
std::uint32_t nearest_rank_percentile(std::vector<std::uint32_t> sample, unsigned pct);

struct ExperimentConfig {
    std::size_t n = 10;
    double p = 0.5;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    std::size_t grid_points = 99;
    unsigned workers = 1;
    std::uint64_t max_rejects = kDefaultMaxRejects;

    /// Throws std::invalid_argument on bad values.
    void validate() const;
};

struct TrialFailure {
    std::uint64_t trial_index = 0;
    std::uint64_t rejects = 0;
};

struct ExperimentResult {
    AggregateStats stats;
    std::vector<TrialFailure> failures;
};

using RecordSink = std::function<void(const TrialRecord&)>;

/// Runs `trials` independent trials on `workers` threads. Records reach
/// `sink` in trial-index order, batch by batch, so output is identical for
/// any worker count.
ExperimentResult run_experiment(const ExperimentConfig& config, const RecordSink& sink = {});

}  // namespace decaycent
