#include "decaycent/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>
#include <variant>

#include "decaycent/centrality.hpp"
#include "decaycent/ordering.hpp"

namespace decaycent {

namespace {

bool is_subset(std::span<const NodeId> sub, std::span<const NodeId> super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool intersects(std::span<const NodeId> a, std::span<const NodeId> b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) {
            return true;
        }
        if (*ia < *ib) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return false;
}

std::uint32_t node_rank(NodeId v, std::span<const DistanceProfile> profiles, std::span<const double> values,
                        double delta) {
    std::uint32_t ahead = 0;
    for (std::size_t u = 0; u < values.size(); ++u) {
        if (static_cast<NodeId>(u) != v && compare_at(profiles, values, delta, static_cast<NodeId>(u), v) > 0) {
            ++ahead;
        }
    }
    return ahead + 1;
}

struct SetRanks {
    std::uint32_t best = 0;
    double mean = 0.0;
};

SetRanks set_ranks(std::span<const NodeId> nodes, std::span<const DistanceProfile> profiles,
                   std::span<const double> values, double delta) {
    SetRanks out;
    double total = 0.0;
    for (NodeId v : nodes) {
        const auto r = node_rank(v, profiles, values, delta);
        out.best = out.best == 0 ? r : std::min(out.best, r);
        total += r;
    }
    out.mean = nodes.empty() ? 0.0 : total / static_cast<double>(nodes.size());
    return out;
}

enum class Side { degree, closeness, neither };

void detect_threshold(TrialRecord& record) {
    const auto& pd = record.per_delta;
    if (record.deg_clos_intersect || pd.empty()) {
        return;
    }
    auto side = [&](std::size_t k) {
        if (pd[k].dc_subset_deg) {
            return Side::degree;
        }
        return pd[k].dc_subset_clos ? Side::closeness : Side::neither;
    };
    if (side(0) != Side::degree || side(pd.size() - 1) != Side::closeness) {
        return;
    }
    std::size_t t = pd.size();
    while (t > 0 && side(t - 1) == Side::closeness) {
        --t;
    }
    record.threshold_index = t;

    std::size_t k = 0;
    while (k < t && side(k) == Side::degree) {
        ++k;
    }
    const std::size_t first_other = k;
    while (k < t && side(k) == Side::neither) {
        ++k;
    }
    record.monotone_transition = k == t;
    record.immediate_transition = record.monotone_transition && first_other == t;
}

}  // namespace

std::uint32_t rank_of(std::span<const NodeId> nodes, std::span<const DistanceProfile> profiles,
                      std::span<const double> values, double delta) {
    if (nodes.empty()) {
        throw std::invalid_argument("rank_of needs a nonempty node set");
    }
    return set_ranks(nodes, profiles, values, delta).best;
}

NodeId rule_of_thumb_pick(std::span<const NodeId> i_deg, std::span<const NodeId> i_clos,
                          std::span<const DistanceProfile> profiles, std::span<const double> values,
                          double delta) {
    std::vector<NodeId> candidates;
    if (delta < 0.5) {
        candidates.assign(i_deg.begin(), i_deg.end());
    } else if (delta > 0.5) {
        candidates.assign(i_clos.begin(), i_clos.end());
    } else {
        std::set_union(i_deg.begin(), i_deg.end(), i_clos.begin(), i_clos.end(), std::back_inserter(candidates));
    }
    if (candidates.empty()) {
        throw std::invalid_argument("rule of thumb needs nonempty maximizer sets");
    }
    std::sort(candidates.begin(), candidates.end());
    NodeId best = candidates.front();
    for (std::size_t k = 1; k < candidates.size(); ++k) {
        if (compare_at(profiles, values, delta, candidates[k], best) > 0) {
            best = candidates[k];
        }
    }
    return best;
}

TrialRecord run_trial(const Graph& g, const DeltaGrid& grid) {
    if (g.node_count() < 2) {
        throw GraphError("a trial needs at least two nodes");
    }
    const auto profiles = all_profiles(g);
    TrialRecord record;
    record.n = g.node_count();
    record.i_deg = degree_maximizers(profiles);
    record.i_clos = closeness_maximizers(profiles);
    record.deg_clos_intersect = intersects(record.i_deg, record.i_clos);

    std::vector<NodeId> both;
    std::set_intersection(record.i_deg.begin(), record.i_deg.end(), record.i_clos.begin(), record.i_clos.end(),
                          std::back_inserter(both));

    std::vector<double> values(profiles.size());
    record.per_delta.reserve(grid.size());
    for (double delta : grid.values()) {
        for (std::size_t v = 0; v < profiles.size(); ++v) {
            values[v] = decay_centrality(profiles[v], delta);
        }
        const auto i_dc = decay_maximizers(profiles, values, delta);

        DeltaOutcome out;
        out.dc_size = static_cast<std::uint32_t>(i_dc.size());
        out.dc_subset_deg = is_subset(i_dc, record.i_deg);
        out.dc_subset_clos = is_subset(i_dc, record.i_clos);
        out.dc_disjoint_both = !intersects(i_dc, record.i_deg) && !intersects(i_dc, record.i_clos);
        out.dc_subset_intersection = !both.empty() && is_subset(i_dc, both);
        if (record.deg_clos_intersect && !out.dc_subset_intersection) {
            record.escapes_intersection = true;
        }

        const auto deg_ranks = set_ranks(record.i_deg, profiles, values, delta);
        const auto clos_ranks = set_ranks(record.i_clos, profiles, values, delta);
        out.best_rank_maxdeg = deg_ranks.best;
        out.mean_rank_maxdeg = deg_ranks.mean;
        out.best_rank_maxclos = clos_ranks.best;
        out.mean_rank_maxclos = clos_ranks.mean;
        out.rule_of_thumb_pick = rule_of_thumb_pick(record.i_deg, record.i_clos, profiles, values, delta);
        out.rule_of_thumb_rank = node_rank(out.rule_of_thumb_pick, profiles, values, delta);
        record.per_delta.push_back(out);
    }
    detect_threshold(record);
    return record;
}

std::uint32_t nearest_rank_percentile(std::vector<std::uint32_t> sample, unsigned pct) {
    if (sample.empty() || pct == 0 || pct > 100) {
        throw std::invalid_argument("percentile needs a nonempty sample and 0 < pct <= 100");
    }
    const std::size_t ordinal = (static_cast<std::size_t>(pct) * sample.size() + 99) / 100;
    const std::size_t idx = std::max<std::size_t>(ordinal, 1) - 1;
    std::nth_element(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(idx), sample.end());
    return sample[idx];
}

Aggregator::Aggregator(std::size_t n, double p, const DeltaGrid& grid)
    : n_(n),
      p_(p),
      deltas_(grid.values().begin(), grid.values().end()),
      all_(grid.size()),
      sub_(grid.size()),
      rank_deg_(grid.size()),
      rank_clos_(grid.size()),
      rank_rule_(grid.size()),
      member_rank_deg_sum_(grid.size(), 0.0),
      member_rank_clos_sum_(grid.size(), 0.0) {}

void Aggregator::add(const TrialRecord& record) {
    if (record.per_delta.size() != deltas_.size()) {
        throw std::invalid_argument("trial record does not match the aggregation grid");
    }
    ++trials_;
    if (record.deg_clos_intersect) {
        ++intersect_;
    }
    if (record.escapes_intersection) {
        ++escape_;
    }
    if (record.threshold_index) {
        ++threshold_;
        monotone_ += record.monotone_transition ? 1 : 0;
        immediate_ += record.immediate_transition ? 1 : 0;
    }
    for (std::size_t k = 0; k < deltas_.size(); ++k) {
        const auto& o = record.per_delta[k];
        auto tally = [&](Counts& c) {
            c.subset_deg += o.dc_subset_deg ? 1 : 0;
            c.subset_clos += o.dc_subset_clos ? 1 : 0;
            c.disjoint += o.dc_disjoint_both ? 1 : 0;
            c.mixed += o.mixed() ? 1 : 0;
        };
        tally(all_[k]);
        if (!record.deg_clos_intersect) {
            tally(sub_[k]);
        }
        rank_deg_[k].push_back(o.best_rank_maxdeg);
        rank_clos_[k].push_back(o.best_rank_maxclos);
        rank_rule_[k].push_back(o.rule_of_thumb_rank);
        member_rank_deg_sum_[k] += o.mean_rank_maxdeg;
        member_rank_clos_sum_[k] += o.mean_rank_maxclos;
    }
}

AggregateStats Aggregator::finish() const {
    AggregateStats s;
    s.n = n_;
    s.p = p_;
    s.trials = trials_;
    s.failed_trials = failed_;
    s.count_intersect = intersect_;
    s.count_intersect_escape = escape_;
    s.count_non_intersecting = trials_ - intersect_;
    s.count_threshold = threshold_;
    s.count_monotone = monotone_;
    s.count_immediate = immediate_;

    auto freq = [](const Counts& c, std::uint64_t denom) {
        FrequencySet f;
        if (denom == 0) {
            return f;
        }
        const auto d = static_cast<double>(denom);
        f.subset_deg = static_cast<double>(c.subset_deg) / d;
        f.subset_clos = static_cast<double>(c.subset_clos) / d;
        f.disjoint_both = static_cast<double>(c.disjoint) / d;
        f.mixed = static_cast<double>(c.mixed) / d;
        return f;
    };
    auto summarize = [](const std::vector<std::uint32_t>& sample) {
        RankSummary r;
        if (sample.empty()) {
            return r;
        }
        double total = 0.0;
        for (auto v : sample) {
            total += v;
        }
        r.mean = total / static_cast<double>(sample.size());
        r.p5 = nearest_rank_percentile(sample, 5);
        r.p95 = nearest_rank_percentile(sample, 95);
        return r;
    };

    s.per_delta.resize(deltas_.size());
    for (std::size_t k = 0; k < deltas_.size(); ++k) {
        auto& d = s.per_delta[k];
        d.delta = deltas_[k];
        d.all = freq(all_[k], trials_);
        d.non_intersecting = freq(sub_[k], s.count_non_intersecting);
        d.rank_maxdeg = summarize(rank_deg_[k]);
        d.rank_maxclos = summarize(rank_clos_[k]);
        d.rank_rule_of_thumb = summarize(rank_rule_[k]);
        if (trials_ > 0) {
            d.mean_member_rank_maxdeg = member_rank_deg_sum_[k] / static_cast<double>(trials_);
            d.mean_member_rank_maxclos = member_rank_clos_sum_[k] / static_cast<double>(trials_);
        }
    }
    return s;
}

AggregateStats aggregate(std::span<const TrialRecord> records, const DeltaGrid& grid) {
    if (records.empty()) {
        throw std::invalid_argument("cannot aggregate an empty record list");
    }
    Aggregator agg(records.front().n, records.front().p, grid);
    for (const auto& r : records) {
        if (r.n != records.front().n || r.p != records.front().p) {
            throw std::invalid_argument("records mix different (n, p)");
        }
        agg.add(r);
    }
    return agg.finish();
}

void ExperimentConfig::validate() const {
    if (n < 2) {
        throw std::invalid_argument("n must be at least 2");
    }
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in (0,1]");
    }
    if (grid_points == 0) {
        throw std::invalid_argument("grid needs at least one point");
    }
    if (workers == 0) {
        throw std::invalid_argument("workers must be positive");
    }
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RecordSink& sink) {
    config.validate();
    const auto grid = DeltaGrid::uniform(config.grid_points);
    Aggregator agg(config.n, config.p, grid);
    ExperimentResult result;

    using Outcome = std::variant<TrialRecord, TrialFailure>;
    constexpr std::uint64_t kBatch = 256;
    std::vector<Outcome> batch;

    for (std::uint64_t start = 0; start < config.trials; start += kBatch) {
        const std::uint64_t count = std::min(kBatch, config.trials - start);
        batch.assign(count, TrialFailure{});
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr error;
        std::atomic<bool> failed{false};

        auto work = [&]() {
            try {
                while (!failed.load()) {
                    const auto k = next.fetch_add(1);
                    if (k >= count) {
                        break;
                    }
                    const std::uint64_t trial = start + k;
                    const TrialSeed seed{config.seed, trial};
                    try {
                        auto sample = sample_connected_gnp(config.n, config.p, seed, config.max_rejects);
                        auto record = run_trial(sample.graph, grid);
                        record.trial_index = trial;
                        record.p = config.p;
                        record.rejects = sample.rejects;
                        batch[k] = std::move(record);
                    } catch (const RejectionLimitError& e) {
                        batch[k] = TrialFailure{trial, e.rejects()};
                    }
                }
            } catch (...) {
                if (!failed.exchange(true)) {
                    error = std::current_exception();
                }
            }
        };

        const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(config.workers, count));
        if (threads <= 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(threads);
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back(work);
            }
        }
        if (error) {
            std::rethrow_exception(error);
        }

        for (auto& outcome : batch) {
            if (auto* record = std::get_if<TrialRecord>(&outcome)) {
                agg.add(*record);
                if (sink) {
                    sink(*record);
                }
            } else {
                agg.add_failure();
                result.failures.push_back(std::get<TrialFailure>(outcome));
            }
        }
    }
    result.stats = agg.finish();
    return result;
}

}  // namespace decaycent
