#include "decaycent/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace decaycent {

std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::greater: return "greater";
        case Relation::less: return "less";
        case Relation::equal: return "equal";
        case Relation::incomparable: return "incomparable";
    }
    return "?";
}

std::string_view to_string(Rule r) {
    switch (r) {
        case Rule::lexicographic: return "lexicographic";
        case Rule::lexicographic_closeness: return "lexicographic_closeness";
        case Rule::unsorted_dominance: return "unsorted_dominance";
        case Rule::distance_dominance: return "distance_dominance";
        case Rule::farness_dominance: return "farness_dominance";
    }
    return "?";
}

Relation reversed(Relation r) {
    switch (r) {
        case Relation::greater: return Relation::less;
        case Relation::less: return Relation::greater;
        default: return r;
    }
}

bool ConditionReport::holds(int id) const {
    return std::find(satisfied.begin(), satisfied.end(), id) != satisfied.end();
}

namespace {

void require_same_length(std::size_t a, std::size_t b) {
    if (a != b) {
        throw std::invalid_argument("vectors have different lengths (" + std::to_string(a) + " vs " +
                                    std::to_string(b) + ")");
    }
}

template <typename T>
ComparisonVerdict lex_impl(std::span<const T> a, std::span<const T> b) {
    require_same_length(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != b[k]) {
            return {a[k] > b[k] ? Relation::greater : Relation::less, Rule::lexicographic, k};
        }
    }
    return {Relation::equal, Rule::lexicographic, std::nullopt};
}

inline std::int64_t add(std::int64_t a, std::int64_t b) { return a + b; }
inline WideInt add(WideInt a, WideInt b) { return checked_add(a, b); }

template <typename T>
ComparisonVerdict ud_impl(std::span<const T> a, std::span<const T> b) {
    require_same_length(a.size(), b.size());
    T pa = 0;
    T pb = 0;
    std::optional<std::size_t> first_greater;
    std::optional<std::size_t> first_less;
    for (std::size_t k = 0; k < a.size(); ++k) {
        pa = add(pa, a[k]);
        pb = add(pb, b[k]);
        if (pa > pb && !first_greater) {
            first_greater = k;
        } else if (pa < pb && !first_less) {
            first_less = k;
        }
    }
    if (!first_greater && !first_less) {
        return {Relation::equal, Rule::unsorted_dominance, std::nullopt};
    }
    if (first_greater && !first_less) {
        return {Relation::greater, Rule::unsorted_dominance, first_greater};
    }
    if (first_less && !first_greater) {
        return {Relation::less, Rule::unsorted_dominance, first_less};
    }
    return {Relation::incomparable, Rule::unsorted_dominance, std::max(*first_greater, *first_less)};
}

int sign(WideInt v) { return (v > 0) - (v < 0); }

}  // namespace

ComparisonVerdict lex_compare(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    return lex_impl(a, b);
}

ComparisonVerdict lex_compare(std::span<const WideInt> a, std::span<const WideInt> b) {
    return lex_impl(a, b);
}

ComparisonVerdict lex_compare_cvec(std::span<const WideInt> fi, std::span<const WideInt> fj) {
    require_same_length(fi.size(), fj.size());
    for (std::size_t k = 0; k < fi.size(); ++k) {
        const WideInt x = fi[k];
        const WideInt y = fj[k];
        if (x == y) {
            continue;
        }
        // Compare 1/x with 1/y (0 standing in for 1/0) without dividing.
        bool i_ahead = false;
        if (x == 0) {
            i_ahead = y < 0;
        } else if (y == 0) {
            i_ahead = x > 0;
        } else if (sign(x) == sign(y)) {
            i_ahead = x < y;
        } else {
            i_ahead = x > 0;
        }
        return {i_ahead ? Relation::greater : Relation::less, Rule::lexicographic_closeness, k};
    }
    return {Relation::equal, Rule::lexicographic_closeness, std::nullopt};
}

ComparisonVerdict ud_compare(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    return ud_impl(a, b);
}

ComparisonVerdict ud_compare(std::span<const WideInt> a, std::span<const WideInt> b) {
    return ud_impl(a, b);
}

ComparisonVerdict check_distance_dominance(const DistanceProfile& pi, const DistanceProfile& pj) {
    auto v = ud_compare(std::span<const std::int64_t>(pi.counts), std::span<const std::int64_t>(pj.counts));
    v.rule = Rule::distance_dominance;
    return v;
}

ComparisonVerdict check_farness_dominance(std::span<const WideInt> fi, std::span<const WideInt> fj) {
    // Smaller farness prefix sums favour node i, so the operands swap.
    auto v = ud_compare(fj, fi);
    v.rule = Rule::farness_dominance;
    return v;
}

ConditionReport check_lower_half(const DistanceProfile& pi, const DistanceProfile& pj) {
    require_same_length(pi.counts.size(), pj.counts.size());
    const std::size_t m = pi.counts.size();  // n - 1
    ConditionReport report;
    if (m == 0) {
        return report;
    }
    std::vector<std::int64_t> a(m);
    for (std::size_t l = 0; l < m; ++l) {
        a[l] = pi.counts[l] - pj.counts[l];
    }
    const std::int64_t a1 = a[0];
    if (a1 <= 0) {
        return report;
    }
    report.applicable = true;
    const auto total = static_cast<std::int64_t>(m);
    const std::int64_t a2 = m >= 2 ? a[1] : 0;
    const std::int64_t dj1 = pj.at_distance(1);
    const std::int64_t dj2 = pj.at_distance(2);

    if (2 * a1 >= total - dj1) {
        report.satisfied.push_back(1);
    }
    if (4 * a1 + 2 * a2 >= total - (dj1 + dj2)) {
        report.satisfied.push_back(2);
    }
    std::int64_t max_tail = 0;
    for (std::size_t l = 1; l < m; ++l) {
        max_tail = std::max(max_tail, std::abs(a[l]));
    }
    if (a1 >= max_tail) {
        report.satisfied.push_back(3);
    }
    std::int64_t max_prefix = 0;
    std::int64_t prefix = a1;
    for (std::size_t k = 1; k + 1 < m; ++k) {  // prefixes of length 2..n-2
        prefix += a[k];
        max_prefix = std::max(max_prefix, std::abs(prefix));
    }
    if (a1 >= max_prefix) {
        report.satisfied.push_back(4);
    }
    return report;
}

ConditionReport check_upper_half(std::span<const WideInt> fi, std::span<const WideInt> fj) {
    require_same_length(fi.size(), fj.size());
    const std::size_t m = fi.size();
    ConditionReport report;
    if (m == 0) {
        return report;
    }
    std::vector<WideInt> b(m);
    for (std::size_t k = 0; k < m; ++k) {
        b[k] = checked_sub(fi[k], fj[k]);
    }
    if (b[0] >= 0) {
        return report;
    }
    report.applicable = true;
    const WideInt lead = wide_abs(b[0]);
    WideInt max_tail = 0;
    for (std::size_t l = 1; l < m; ++l) {
        max_tail = std::max(max_tail, wide_abs(b[l]));
    }
    if (lead >= max_tail) {
        report.satisfied.push_back(1);
    }
    WideInt max_prefix = 0;
    WideInt prefix = b[0];
    for (std::size_t k = 1; k + 1 < m; ++k) {
        prefix = checked_add(prefix, b[k]);
        max_prefix = std::max(max_prefix, wide_abs(prefix));
    }
    if (lead >= max_prefix) {
        report.satisfied.push_back(2);
    }
    return report;
}

std::vector<NodeId> degree_maximizers(std::span<const DistanceProfile> profiles) {
    std::vector<NodeId> out;
    std::int64_t best = -1;
    for (const auto& p : profiles) {
        const auto d = p.degree();
        if (d > best) {
            best = d;
            out.clear();
        }
        if (d == best) {
            out.push_back(p.node);
        }
    }
    return out;
}

std::vector<NodeId> closeness_maximizers(std::span<const DistanceProfile> profiles) {
    std::vector<NodeId> out;
    std::int64_t best = 0;
    for (const auto& p : profiles) {
        const auto f = p.farness();
        if (out.empty() || f < best) {
            best = f;
            out.clear();
        }
        if (f == best) {
            out.push_back(p.node);
        }
    }
    return out;
}

double decay_tie_tolerance(double scale) {
    return 1e-9 * std::max(1.0, std::abs(scale));
}

int compare_at(std::span<const DistanceProfile> profiles, std::span<const double> values, double delta,
               NodeId u, NodeId v) {
    const auto su = static_cast<std::size_t>(u);
    const auto sv = static_cast<std::size_t>(v);
    const double diff = values[su] - values[sv];
    const double tol = decay_tie_tolerance(std::max(std::abs(values[su]), std::abs(values[sv])));
    if (diff > tol) {
        return 1;
    }
    if (diff < -tol) {
        return -1;
    }
    return compare_decay(profiles[su], profiles[sv], delta);
}

std::vector<NodeId> decay_maximizers(std::span<const DistanceProfile> profiles,
                                     std::span<const double> values, double delta) {
    std::vector<NodeId> out;
    if (values.empty()) {
        return out;
    }
    const double top = *std::max_element(values.begin(), values.end());
    const double floor = top - decay_tie_tolerance(top);
    for (std::size_t v = 0; v < values.size(); ++v) {
        if (values[v] < floor) {
            continue;
        }
        const auto node = static_cast<NodeId>(v);
        if (out.empty()) {
            out.push_back(node);
            continue;
        }
        const int c = compare_decay(profiles[v], profiles[static_cast<std::size_t>(out.front())], delta);
        if (c > 0) {
            out.assign(1, node);
        } else if (c == 0) {
            out.push_back(node);
        }
    }
    return out;
}

MaximizerSets maximizer_sets(std::span<const DistanceProfile> profiles, const DeltaGrid& grid) {
    MaximizerSets sets;
    sets.i_deg = degree_maximizers(profiles);
    sets.i_clos = closeness_maximizers(profiles);
    sets.i_dc.reserve(grid.size());
    std::vector<double> values(profiles.size());
    for (double delta : grid.values()) {
        for (std::size_t v = 0; v < profiles.size(); ++v) {
            values[v] = decay_centrality(profiles[v], delta);
        }
        sets.i_dc.push_back(decay_maximizers(profiles, values, delta));
    }
    return sets;
}

MaximizerSets maximizer_sets(const Graph& g, const DeltaGrid& grid) {
    const auto profiles = all_profiles(g);
    return maximizer_sets(profiles, grid);
}

}  // namespace decaycent
