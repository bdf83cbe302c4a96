#include "decaycent/check.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "decaycent/centrality.hpp"
#include "decaycent/delta_grid.hpp"
#include "decaycent/generation.hpp"
#include "decaycent/graph.hpp"
#include "decaycent/graph_io.hpp"
#include "decaycent/ordering.hpp"

namespace decaycent {

namespace {

constexpr double kLowDelta = 1e-6;
constexpr double kHighDelta = 1.0 - 1e-6;
constexpr std::uint64_t kCheckMaxRejects = 100000;

enum Prop : std::size_t {
    bfs_matches_floyd_warshall,
    distance_symmetry,
    profile_sums,
    horner_matches_power_sum,
    difference_coefficients_sum_to_zero,
    factored_difference_delta,
    factored_difference_eps,
    closeness_order_reverses_farness_order,
    closeness_comparison_exact,
    unsorted_dominance_partial_order,
    distance_dominance_sound,
    farness_dominance_sound,
    lower_half_conditions_sound,
    upper_half_conditions_sound,
    low_delta_lexicographic_order,
    high_delta_closeness_order,
    prop_count,
};

const char* const kNames[prop_count] = {
    "bfs_matches_floyd_warshall",
    "distance_symmetry",
    "profile_sums",
    "horner_matches_power_sum",
    "difference_coefficients_sum_to_zero",
    "factored_difference_delta",
    "factored_difference_eps",
    "closeness_order_reverses_farness_order",
    "closeness_comparison_exact",
    "unsorted_dominance_partial_order",
    "distance_dominance_sound",
    "farness_dominance_sound",
    "lower_half_conditions_sound",
    "upper_half_conditions_sound",
    "low_delta_lexicographic_order",
    "high_delta_closeness_order",
};

std::vector<WideInt> farness_vector(const DistanceProfile& profile, Mutant mutant) {
    auto f = higher_order_farness(profile);
    if (mutant == Mutant::flip_binomial_sign) {
        // term C(k+1,k) D^{k+1} subtracted instead of added
        for (std::size_t k = 1; k < f.size(); ++k) {
            const WideInt term = 2 * static_cast<WideInt>(k + 1) * profile.counts[k];
            f[k - 1] += (k % 2 == 1) ? -term : term;
        }
    }
    return f;
}

std::vector<std::vector<std::int32_t>> floyd_warshall(const Graph& g) {
    const std::size_t n = g.node_count();
    constexpr std::int32_t inf = std::numeric_limits<std::int32_t>::max() / 4;
    std::vector<std::vector<std::int32_t>> d(n, std::vector<std::int32_t>(n, inf));
    for (std::size_t u = 0; u < n; ++u) {
        d[u][u] = 0;
        for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
            d[u][static_cast<std::size_t>(v)] = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][k] + d[k][j] < d[i][j]) {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    for (auto& row : d) {
        for (auto& x : row) {
            if (x == inf) {
                x = -1;
            }
        }
    }
    return d;
}

bool sign_agrees(Relation r, int sign) {
    switch (r) {
        case Relation::greater: return sign > 0;
        case Relation::less: return sign < 0;
        case Relation::equal: return sign == 0;
        case Relation::incomparable: return true;
    }
    return true;
}

Relation lex_real(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) return Relation::greater;
        if (a[k] < b[k]) return Relation::less;
    }
    return Relation::equal;
}

class Runner {
public:
    explicit Runner(const CheckOptions& options) : opt_(options), fine_(DeltaGrid::uniform(options.soundness_points)),
                                                    coarse_(DeltaGrid::uniform(99)) {
        report_.properties.resize(prop_count);
        for (std::size_t k = 0; k < prop_count; ++k) {
            report_.properties[k].name = kNames[k];
        }
        report_.properties[low_delta_lexicographic_order].advisory = true;
        report_.properties[high_delta_closeness_order].advisory = true;
    }

    CheckReport run() {
        for (std::uint64_t t = 0; t < opt_.graphs; ++t) {
            std::mt19937_64 pick(TrialSeed{opt_.seed ^ 0x5DEECE66DULL, t}.stream_seed());
            const std::size_t n =
                std::uniform_int_distribution<std::size_t>(opt_.n_min, opt_.n_max)(pick);
            const double p = std::uniform_real_distribution<double>(0.15, 0.85)(pick);
            try {
                auto sample = sample_connected_gnp(n, p, TrialSeed{opt_.seed, t}, kCheckMaxRejects);
                check_graph(sample.graph);
                ++report_.graphs;
            } catch (const RejectionLimitError&) {
                ++report_.skipped_graphs;
            }
        }
        return std::move(report_);
    }

private:
    void record(Prop prop, bool ok, const Graph& g, nlohmann::json detail) {
        auto& r = report_.properties[prop];
        ++r.cases;
        if (!ok) {
            ++r.failures;
            if (!r.counterexample) {
                detail["graph"] = nlohmann::json::parse(to_graph_json(g));
                r.counterexample = std::move(detail);
            }
        }
    }

    void check_graph(const Graph& g) {
        const std::size_t n = g.node_count();
        const auto fw = floyd_warshall(g);
        std::vector<std::vector<std::int32_t>> dist(n);
        for (std::size_t u = 0; u < n; ++u) {
            dist[u] = bfs_distances(g, static_cast<NodeId>(u));
            record(bfs_matches_floyd_warshall, dist[u] == fw[u], g, {{"node", u}});
        }
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                record(distance_symmetry, dist[u][v] == dist[v][u], g, {{"i", u}, {"j", v}});
            }
        }

        const auto profiles = all_profiles(g);
        std::vector<std::vector<WideInt>> fvec(n);
        std::vector<std::vector<double>> cvec(n);
        for (std::size_t u = 0; u < n; ++u) {
            const auto& counts = profiles[u].counts;
            std::vector<std::int64_t> hist(n - 1, 0);
            for (std::size_t v = 0; v < n; ++v) {
                if (v != u && dist[u][v] >= 1) {
                    ++hist[static_cast<std::size_t>(dist[u][v] - 1)];
                }
            }
            std::int64_t total = 0;
            for (auto c : counts) {
                total += c;
            }
            record(profile_sums, total == static_cast<std::int64_t>(n - 1) && hist == counts, g, {{"node", u}});

            for (double d : coarse_.values()) {
                double naive = 0.0;
                for (std::size_t l = 0; l < counts.size(); ++l) {
                    naive += std::pow(d, static_cast<double>(l + 1)) * static_cast<double>(counts[l]);
                }
                const double horner = decay_centrality(profiles[u], d);
                record(horner_matches_power_sum, std::abs(horner - naive) <= 1e-12 * std::max(1.0, std::abs(naive)),
                       g, {{"node", u}, {"delta", d}, {"horner", horner}, {"power_sum", naive}});
            }
            fvec[u] = farness_vector(profiles[u], opt_.mutant);
            cvec[u] = higher_order_closeness(fvec[u]);
        }

        check_partial_order(g, profiles, fvec);

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                check_pair(g, profiles, fvec, cvec, i, j);
            }
        }
    }

    void check_partial_order(const Graph& g, const std::vector<DistanceProfile>& profiles,
                             const std::vector<std::vector<WideInt>>& fvec) {
        const std::size_t n = profiles.size();
        std::vector<std::vector<Relation>> rd(n, std::vector<Relation>(n));
        std::vector<std::vector<Relation>> rf(n, std::vector<Relation>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                rd[i][j] = ud_compare(std::span<const std::int64_t>(profiles[i].counts),
                                      std::span<const std::int64_t>(profiles[j].counts)).relation;
                rf[i][j] = ud_compare(std::span<const WideInt>(fvec[i]), std::span<const WideInt>(fvec[j])).relation;
            }
        }
        for (const auto* rel : {&rd, &rf}) {
            const auto& r = *rel;
            const bool on_farness = rel == &rf;
            for (std::size_t i = 0; i < n; ++i) {
                record(unsorted_dominance_partial_order, r[i][i] == Relation::equal, g,
                       {{"vectors", on_farness ? "farness" : "distance"}, {"i", i}, {"j", i}});
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) {
                        continue;
                    }
                    record(unsorted_dominance_partial_order, r[i][j] == reversed(r[j][i]), g,
                           {{"vectors", on_farness ? "farness" : "distance"}, {"i", i}, {"j", j}});
                    if (r[i][j] != Relation::greater) {
                        continue;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        if (r[j][k] == Relation::greater) {
                            record(unsorted_dominance_partial_order, r[i][k] == Relation::greater, g,
                                   {{"vectors", on_farness ? "farness" : "distance"}, {"i", i}, {"j", j}, {"k", k}});
                        }
                    }
                }
            }
        }
    }

    void check_pair(const Graph& g, const std::vector<DistanceProfile>& profiles,
                    const std::vector<std::vector<WideInt>>& fvec, const std::vector<std::vector<double>>& cvec,
                    std::size_t i, std::size_t j) {
        const auto& pi = profiles[i];
        const auto& pj = profiles[j];
        const auto coeffs = dc_difference_coeffs(pi, pj);
        std::vector<WideInt> b(fvec[i].size());
        WideInt sum_b = 0;
        std::int64_t sum_a = 0;
        for (std::size_t k = 0; k < b.size(); ++k) {
            b[k] = fvec[i][k] - fvec[j][k];
            sum_b += b[k];
            sum_a += coeffs.a[k];
        }
        record(difference_coefficients_sum_to_zero, sum_a == 0 && sum_b == 0, g, {{"i", i}, {"j", j}});

        for (double d : coarse_.values()) {
            const double direct = decay_centrality(pi, d) - decay_centrality(pj, d);
            const double fa = dc_difference_factored(coeffs.a, d);
            record(factored_difference_delta, std::abs(fa - direct) <= 1e-10, g,
                   {{"i", i}, {"j", j}, {"delta", d}, {"direct", direct}, {"factored", fa}});
            if (sum_b == 0) {
                const double fb = dc_difference_factored_eps(b, d);
                record(factored_difference_eps, std::abs(fb - direct) <= 1e-10, g,
                       {{"i", i}, {"j", j}, {"delta", d}, {"direct", direct}, {"factored", fb}});
            } else {
                record(factored_difference_eps, false, g, {{"i", i}, {"j", j}, {"delta", d}, {"reason", "sum != 0"}});
            }
        }

        const auto lex_f = lex_compare(std::span<const WideInt>(fvec[i]), std::span<const WideInt>(fvec[j]));
        const Relation lex_c = lex_real(cvec[i], cvec[j]);
        if (lex_f.relation != Relation::equal) {
            record(closeness_order_reverses_farness_order, lex_c == reversed(lex_f.relation), g,
                   {{"i", i}, {"j", j}, {"farness_order", to_string(lex_f.relation)},
                    {"closeness_order", to_string(lex_c)}});
        }
        const auto lex_cx = lex_compare_cvec(fvec[i], fvec[j]);
        record(closeness_comparison_exact, lex_cx.relation == lex_c, g,
               {{"i", i}, {"j", j}, {"exact", to_string(lex_cx.relation)}, {"real", to_string(lex_c)}});

        // Exact signs on the fine grid, computed once per pair.
        std::vector<int> sign(fine_.size());
        for (std::size_t k = 0; k < fine_.size(); ++k) {
            sign[k] = decay_difference_sign(coeffs.a, fine_[k]);
        }
        auto sound_on = [&](Prop prop, Relation expect, double lo, double hi, nlohmann::json detail) {
            for (std::size_t k = 0; k < fine_.size(); ++k) {
                const double d = fine_[k];
                if (d < lo || d > hi) {
                    continue;
                }
                if (!sign_agrees(expect, sign[k])) {
                    detail["i"] = i;
                    detail["j"] = j;
                    detail["delta"] = d;
                    detail["sign"] = sign[k];
                    record(prop, false, g, std::move(detail));
                    return;
                }
            }
            record(prop, true, g, {});
        };

        const auto dd = check_distance_dominance(pi, pj);
        if (dd.relation != Relation::incomparable) {
            sound_on(distance_dominance_sound, dd.relation, 0.0, 1.0, {{"verdict", to_string(dd.relation)}});
        }
        const auto fd = check_farness_dominance(fvec[i], fvec[j]);
        if (fd.relation != Relation::incomparable) {
            sound_on(farness_dominance_sound, fd.relation, 0.0, 1.0, {{"verdict", to_string(fd.relation)}});
        }
        for (const bool forward : {true, false}) {
            const auto lower = forward ? check_lower_half(pi, pj) : check_lower_half(pj, pi);
            const Relation expect = forward ? Relation::greater : Relation::less;
            if (lower.fired()) {
                sound_on(lower_half_conditions_sound, expect, 0.0, 0.5, {{"conditions", lower.satisfied}});
            }
            const auto upper = forward ? check_upper_half(fvec[i], fvec[j]) : check_upper_half(fvec[j], fvec[i]);
            if (upper.fired()) {
                sound_on(upper_half_conditions_sound, expect, 0.5, 1.0, {{"conditions", upper.satisfied}});
            }
        }

        const auto lex_d = lex_compare(std::span<const std::int64_t>(pi.counts), std::span<const std::int64_t>(pj.counts));
        const int low = decay_difference_sign(coeffs.a, kLowDelta);
        record(low_delta_lexicographic_order, sign_agrees(lex_d.relation, low), g,
               {{"i", i}, {"j", j}, {"delta", kLowDelta}, {"sign", low}, {"lex", to_string(lex_d.relation)}});
        const int high = decay_difference_sign(coeffs.a, kHighDelta);
        record(high_delta_closeness_order, sign_agrees(lex_cx.relation, high), g,
               {{"i", i}, {"j", j}, {"delta", kHighDelta}, {"sign", high}, {"lex", to_string(lex_cx.relation)}});
    }

    const CheckOptions& opt_;
    DeltaGrid fine_;
    DeltaGrid coarse_;
    CheckReport report_;
};

}  // namespace

void CheckOptions::validate() const {
    if (n_min < 2 || n_max < n_min) {
        throw std::invalid_argument("check needs 2 <= n_min <= n_max");
    }
    if (n_max > 64) {
        throw std::invalid_argument("check graphs are limited to 64 nodes");
    }
    if (soundness_points == 0) {
        throw std::invalid_argument("soundness grid needs at least one point");
    }
}

bool CheckReport::passed() const {
    for (const auto& p : properties) {
        if (!p.advisory && !p.passed()) {
            return false;
        }
    }
    return true;
}

const PropertyResult* CheckReport::find(const std::string& name) const {
    for (const auto& p : properties) {
        if (p.name == name) {
            return &p;
        }
    }
    return nullptr;
}

CheckReport run_checks(const CheckOptions& options) {
    options.validate();
    if (options.graphs == 0) {
        return {};
    }
    return Runner(options).run();
}

nlohmann::json to_json(const CheckReport& report) {
    nlohmann::json doc;
    doc["graphs"] = report.graphs;
    doc["skipped_graphs"] = report.skipped_graphs;
    doc["passed"] = report.passed();
    auto props = nlohmann::json::array();
    for (const auto& p : report.properties) {
        nlohmann::json j = {{"name", p.name}, {"advisory", p.advisory}, {"cases", p.cases},
                            {"failures", p.failures}, {"passed", p.passed()}};
        j["counterexample"] = p.counterexample ? *p.counterexample : nlohmann::json(nullptr);
        props.push_back(std::move(j));
    }
    doc["properties"] = std::move(props);
    return doc;
}

}  // namespace decaycent
