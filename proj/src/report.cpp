#include "decaycent/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#ifndef DECAYCENT_VERSION
#define DECAYCENT_VERSION "0.1.0"
#endif

namespace decaycent::report {

namespace {

std::string join_nodes(std::span<const NodeId> nodes) {
    std::string out;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k > 0) {
            out += ';';
        }
        out += std::to_string(nodes[k]);
    }
    return out;
}

nlohmann::json wide_vector_json(std::span<const WideInt> v) {
    auto arr = nlohmann::json::array();
    for (auto x : v) {
        arr.push_back(wide_to_json(x));
    }
    return arr;
}

// Flat "key=value" rendering of a JSON object for comment lines.
std::string flat(const nlohmann::json& obj) {
    std::string out;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!out.empty()) {
            out += ' ';
        }
        out += it.key() + '=' + (it->is_string() ? it->get<std::string>() : it->dump());
    }
    return out;
}

}  // namespace

std::string version() { return DECAYCENT_VERSION; }

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

nlohmann::json wide_to_json(WideInt v) {
    if (fits_int64(v)) {
        return static_cast<std::int64_t>(v);
    }
    return to_string(v);
}

nlohmann::json conventions() {
    return {
        {"rank", "competition: 1 + number of nodes with strictly larger decay centrality"},
        {"set_rank", "best member (minimum rank); mean member rank reported alongside"},
        {"percentile", "nearest-rank on the per-trial sample"},
        {"ties", "exact: decay values compared in exact arithmetic at the grid value"},
        {"rule_of_thumb", "I_deg for delta < 0.5, I_clos for delta > 0.5, union at 0.5; best decay centrality, lowest id on ties"},
        {"threshold", "first grid index from which I_dc stays inside I_clos, for trials with disjoint I_deg, I_clos"},
        {"failed_trials", "excluded from all denominators"},
    };
}

nlohmann::json meta() {
    return {{"tool", "decaycent"}, {"version", version()}, {"conventions", conventions()}};
}

nlohmann::json verdict_json(const ComparisonVerdict& v) {
    nlohmann::json j = {{"relation", std::string(to_string(v.relation))}, {"rule", std::string(to_string(v.rule))}};
    j["witness"] = v.witness ? nlohmann::json(*v.witness) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json conditions_json(const ConditionReport& r) {
    return {{"applicable", r.applicable}, {"satisfied", r.satisfied}};
}

void write_comment_block(std::ostream& out, const nlohmann::json& config) {
    out << "# decaycent " << version() << '\n';
    out << "# config " << flat(config) << '\n';
    out << "# conventions rank=competition set_rank=best_member percentile=nearest_rank ties=exact\n";
}

void write_table_csv(std::ostream& out, const CentralityTable& table, const DeltaGrid& grid,
                     const MaximizerSets& sets, const nlohmann::json& config) {
    write_comment_block(out, config);
    out << "# i_deg=" << join_nodes(sets.i_deg) << '\n';
    out << "# i_clos=" << join_nodes(sets.i_clos) << '\n';
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out << "# i_dc@" << format_real(grid[k]) << '=' << join_nodes(sets.i_dc[k]) << '\n';
    }
    out << "node,degree,farness,closeness";
    for (double d : grid.values()) {
        out << ",dc@" << format_real(d);
    }
    out << '\n';
    for (const auto& nc : table.nodes) {
        out << nc.node << ',' << nc.degree << ',' << nc.farness << ',' << format_real(nc.closeness.value());
        for (double v : decay_curve(nc.profile, grid)) {
            out << ',' << format_real(v);
        }
        out << '\n';
    }
}

nlohmann::json table_json(const CentralityTable& table, const DeltaGrid& grid, const MaximizerSets& sets,
                          bool full, const nlohmann::json& config) {
    nlohmann::json doc;
    doc["meta"] = meta();
    doc["config"] = config;
    doc["n"] = table.n;
    doc["deltas"] = std::vector<double>(grid.values().begin(), grid.values().end());
    auto nodes = nlohmann::json::array();
    for (const auto& nc : table.nodes) {
        nlohmann::json j = {
            {"node", nc.node},
            {"degree", nc.degree},
            {"farness", nc.farness},
            {"closeness", nc.closeness.value()},
            {"dc", decay_curve(nc.profile, grid)},
        };
        if (full) {
            j["profile"] = nc.profile.counts;
            j["fvec"] = wide_vector_json(nc.fvec);
            j["cvec"] = nc.cvec;
        }
        nodes.push_back(std::move(j));
    }
    doc["nodes"] = std::move(nodes);
    auto i_dc = nlohmann::json::array();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        i_dc.push_back({{"delta", grid[k]}, {"nodes", sets.i_dc[k]}});
    }
    doc["maximizers"] = {{"i_deg", sets.i_deg}, {"i_clos", sets.i_clos}, {"i_dc", std::move(i_dc)}};
    return doc;
}

nlohmann::json compare_json(const CentralityTable& table, NodeId i, NodeId j, const DeltaGrid& grid,
                            const nlohmann::json& config) {
    const auto& ni = table.nodes.at(static_cast<std::size_t>(i));
    const auto& nj = table.nodes.at(static_cast<std::size_t>(j));
    const auto coeffs = dc_difference_coeffs(ni.profile, nj.profile);
    const std::span<const std::int64_t> di(ni.profile.counts);
    const std::span<const std::int64_t> dj(nj.profile.counts);

    nlohmann::json doc;
    doc["meta"] = meta();
    doc["config"] = config;
    doc["i"] = i;
    doc["j"] = j;
    doc["n"] = table.n;
    doc["nodes"] = {
        {"i", {{"degree", ni.degree}, {"farness", ni.farness}, {"profile", ni.profile.counts}, {"fvec", wide_vector_json(ni.fvec)}}},
        {"j", {{"degree", nj.degree}, {"farness", nj.farness}, {"profile", nj.profile.counts}, {"fvec", wide_vector_json(nj.fvec)}}},
    };
    doc["coefficients"] = {{"a", coeffs.a}, {"b", wide_vector_json(coeffs.b)}};
    doc["verdicts"] = {
        {"lex_distance", verdict_json(lex_compare(di, dj))},
        {"lex_closeness", verdict_json(lex_compare_cvec(ni.fvec, nj.fvec))},
        {"unsorted_dominance_distance", verdict_json(ud_compare(di, dj))},
        {"unsorted_dominance_farness", verdict_json(ud_compare(std::span<const WideInt>(ni.fvec), std::span<const WideInt>(nj.fvec)))},
        {"distance_dominance", verdict_json(check_distance_dominance(ni.profile, nj.profile))},
        {"farness_dominance", verdict_json(check_farness_dominance(ni.fvec, nj.fvec))},
    };
    doc["conditions"] = {
        {"lower_half", conditions_json(check_lower_half(ni.profile, nj.profile))},
        {"upper_half", conditions_json(check_upper_half(ni.fvec, nj.fvec))},
    };
    auto curve = nlohmann::json::array();
    for (double d : grid.values()) {
        curve.push_back({
            {"delta", d},
            {"difference", decay_centrality(ni.profile, d) - decay_centrality(nj.profile, d)},
            {"factored", dc_difference_factored(coeffs.a, d)},
            {"factored_eps", dc_difference_factored_eps(coeffs.b, d)},
            {"sign", compare_decay(ni.profile, nj.profile, d)},
        });
    }
    doc["curve"] = std::move(curve);
    return doc;
}

nlohmann::json result_config_json(const ExperimentConfig& c) {
    return {
        {"n", c.n},
        {"p", format_real(c.p)},
        {"trials", c.trials},
        {"seed", c.seed},
        {"grid_points", c.grid_points},
        {"max_rejects", c.max_rejects},
    };
}

nlohmann::json experiment_config_json(const ExperimentConfig& c) {
    auto j = result_config_json(c);
    j["workers"] = c.workers;
    return j;
}

void write_records_header(std::ostream& out) {
    out << "trial,n,p,rejects,delta_index,delta,i_deg,i_clos,deg_clos_intersect,dc_size,"
           "dc_subset_deg,dc_subset_clos,dc_disjoint_both,dc_mixed,dc_subset_intersection,"
           "best_rank_maxdeg,best_rank_maxclos,mean_rank_maxdeg,mean_rank_maxclos,"
           "rule_of_thumb_pick,rule_of_thumb_rank,threshold_index\n";
}

void write_record_rows(std::ostream& out, const TrialRecord& r, const DeltaGrid& grid) {
    const std::string prefix = std::to_string(r.trial_index) + ',' + std::to_string(r.n) + ',' + format_real(r.p) +
                               ',' + std::to_string(r.rejects) + ',';
    const std::string sets = join_nodes(r.i_deg) + ',' + join_nodes(r.i_clos) + ',' +
                             (r.deg_clos_intersect ? "1" : "0") + ',';
    const std::string threshold = r.threshold_index ? std::to_string(*r.threshold_index) : "";
    for (std::size_t k = 0; k < r.per_delta.size(); ++k) {
        const auto& o = r.per_delta[k];
        out << prefix << k << ',' << format_real(grid[k]) << ',' << sets << o.dc_size << ','
            << o.dc_subset_deg << ',' << o.dc_subset_clos << ',' << o.dc_disjoint_both << ',' << o.mixed() << ','
            << o.dc_subset_intersection << ',' << o.best_rank_maxdeg << ',' << o.best_rank_maxclos << ','
            << format_real(o.mean_rank_maxdeg) << ',' << format_real(o.mean_rank_maxclos) << ','
            << o.rule_of_thumb_pick << ',' << o.rule_of_thumb_rank << ',' << threshold << '\n';
    }
}

void write_aggregate_csv(std::ostream& out, const AggregateStats& s) {
    out << "delta_index,delta,freq_subset_deg,freq_subset_clos,freq_disjoint_both,freq_mixed,"
           "nonint_freq_subset_deg,nonint_freq_subset_clos,nonint_freq_disjoint_both,nonint_freq_mixed,"
           "rank_maxdeg_mean,rank_maxdeg_p5,rank_maxdeg_p95,"
           "rank_maxclos_mean,rank_maxclos_p5,rank_maxclos_p95,"
           "rank_rule_mean,rank_rule_p5,rank_rule_p95,"
           "member_rank_maxdeg_mean,member_rank_maxclos_mean\n";
    for (std::size_t k = 0; k < s.per_delta.size(); ++k) {
        const auto& d = s.per_delta[k];
        auto freqs = [&](const FrequencySet& f) {
            out << ',' << format_real(f.subset_deg) << ',' << format_real(f.subset_clos) << ','
                << format_real(f.disjoint_both) << ',' << format_real(f.mixed);
        };
        auto ranks = [&](const RankSummary& r) {
            out << ',' << format_real(r.mean) << ',' << r.p5 << ',' << r.p95;
        };
        out << k << ',' << format_real(d.delta);
        freqs(d.all);
        freqs(d.non_intersecting);
        ranks(d.rank_maxdeg);
        ranks(d.rank_maxclos);
        ranks(d.rank_rule_of_thumb);
        out << ',' << format_real(d.mean_member_rank_maxdeg) << ',' << format_real(d.mean_member_rank_maxclos)
            << '\n';
    }
}

nlohmann::json summary_json(const ExperimentConfig& config, const ExperimentResult& result,
                            const nlohmann::json& run_config) {
    const auto& s = result.stats;
    nlohmann::json doc;
    doc["meta"] = meta();
    doc["config"] = run_config.is_null() ? experiment_config_json(config) : run_config;
    const double denom = s.trials > 0 ? static_cast<double>(s.trials) : 1.0;
    doc["trials"] = {{"requested", config.trials}, {"successful", s.trials}, {"failed", s.failed_trials}};
    doc["intersection"] = {
        {"count", s.count_intersect},
        {"frequency", static_cast<double>(s.count_intersect) / denom},
    };
    doc["intersection_escape"] = {
        {"count", s.count_intersect_escape},
        {"frequency", static_cast<double>(s.count_intersect_escape) / denom},
    };
    doc["transitions"] = {
        {"non_intersecting", s.count_non_intersecting},
        {"with_threshold", s.count_threshold},
        {"monotone", s.count_monotone},
        {"immediate", s.count_immediate},
        {"non_monotone", s.count_threshold - s.count_monotone},
    };
    auto failures = nlohmann::json::array();
    for (const auto& f : result.failures) {
        failures.push_back({{"trial", f.trial_index}, {"rejects", f.rejects}});
    }
    doc["failed_trials"] = std::move(failures);
    return doc;
}

}  // namespace decaycent::report
