#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <array>
#include <cmath>
#include <map>

#include "decaycent/generation.hpp"

using namespace decaycent;

namespace {

constexpr std::size_t kN = 6;
constexpr double kP = 0.4;
constexpr int kPairs = 15;

std::pair<int, int> pair_at(int idx) {
    int u = 0;
    int row = kN - 1;
    while (idx >= row) {
        idx -= row;
        ++u;
        --row;
    }
    return {u, u + 1 + idx};
}

bool mask_connected(unsigned mask) {
    unsigned seen = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int k = 0; k < kPairs; ++k) {
            if (!(mask >> k & 1U)) continue;
            auto [u, v] = pair_at(k);
            const bool a = seen >> u & 1U, b = seen >> v & 1U;
            if (a != b) {
                seen |= (1U << u) | (1U << v);
                grew = true;
            }
        }
    }
    return seen == (1U << kN) - 1;
}

// Bin: (edge count, degree of node 0).
int bin_of(unsigned mask) {
    int deg0 = 0;
    for (int k = 0; k < kPairs; ++k)
        if (mask >> k & 1U && pair_at(k).first == 0) ++deg0;
    return __builtin_popcount(mask) * 8 + deg0;
}

unsigned mask_of(const Graph& g) {
    unsigned mask = 0;
    for (int k = 0; k < kPairs; ++k) {
        auto [u, v] = pair_at(k);
        if (g.has_edge(u, v)) mask |= 1U << k;
    }
    return mask;
}

// Chi-square p-value of observed bin counts against exact bin probabilities,
// with bins of expected count below 5 pooled.
double chi_square_p(const std::map<int, double>& prob, const std::map<int, std::uint64_t>& seen, std::uint64_t total) {
    for (const auto& entry : seen) {
        if (!prob.count(entry.first)) return 0.0;  // impossible outcome
    }
    double stat = 0.0;
    int dof = -1;
    double pooled_e = 0.0, pooled_o = 0.0;
    for (auto [bin, p] : prob) {
        const double e = p * static_cast<double>(total);
        const double o = seen.count(bin) ? static_cast<double>(seen.at(bin)) : 0.0;
        if (e < 5.0) {
            pooled_e += e;
            pooled_o += o;
            continue;
        }
        stat += (o - e) * (o - e) / e;
        ++dof;
    }
    if (pooled_e > 0.0) {
        stat += (pooled_o - pooled_e) * (pooled_o - pooled_e) / pooled_e;
        ++dof;
    }
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

std::map<int, double> enumerate(bool connected_only) {
    std::map<int, double> prob;
    double total = 0.0;
    for (unsigned mask = 0; mask < (1U << kPairs); ++mask) {
        if (connected_only && !mask_connected(mask)) continue;
        const int m = __builtin_popcount(mask);
        const double w = std::pow(kP, m) * std::pow(1 - kP, kPairs - m);
        prob[bin_of(mask)] += w;
        total += w;
    }
    for (auto& [bin, p] : prob) p /= total;
    return prob;
}

}  // namespace

TEST(Generation, SameSeedSameGraph) {
    const auto a = sample_gnp(30, 0.2, TrialSeed{42, 7});
    const auto b = sample_gnp(30, 0.2, TrialSeed{42, 7});
    const auto c = sample_gnp(30, 0.2, TrialSeed{42, 8});
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    EXPECT_NE((TrialSeed{42, 0}.stream_seed()), (TrialSeed{43, 0}.stream_seed()));
}

TEST(Generation, Arguments) {
    EXPECT_THROW(GnpSampler(1, 0.5, TrialSeed{}), std::invalid_argument);
    EXPECT_THROW(GnpSampler(5, 0.0, TrialSeed{}), std::invalid_argument);
    EXPECT_THROW(GnpSampler(5, 1.5, TrialSeed{}), std::invalid_argument);
    EXPECT_EQ(sample_gnp(5, 1.0, TrialSeed{}).edge_count(), 10u);
}

TEST(Generation, MeanEdgeCount) {
    double total = 0.0;
    const int samples = 4000;
    for (int t = 0; t < samples; ++t) {
        total += static_cast<double>(sample_gnp(50, 0.1, TrialSeed{3, static_cast<std::uint64_t>(t)}).edge_count());
    }
    EXPECT_NEAR(total / samples, 122.5, 1.225);
}

TEST(Generation, UnconditionedDistributionMatchesEnumeration) {
    const auto prob = enumerate(false);
    std::map<int, std::uint64_t> seen;
    const std::uint64_t total = 100000;
    GnpSampler sampler(kN, kP, TrialSeed{17, 0});
    for (std::uint64_t t = 0; t < total; ++t) ++seen[bin_of(mask_of(sampler.draw()))];
    EXPECT_GT(chi_square_p(prob, seen, total), 0.001);
}

TEST(Generation, ConnectedDistributionMatchesEnumeration) {
    const auto prob = enumerate(true);
    std::map<int, std::uint64_t> seen;
    const std::uint64_t total = 100000;
    for (std::uint64_t t = 0; t < total; ++t) {
        const auto s = sample_connected_gnp(kN, kP, TrialSeed{19, t}, kDefaultMaxRejects);
        ASSERT_TRUE(is_connected(s.graph));
        ++seen[bin_of(mask_of(s.graph))];
    }
    EXPECT_GT(chi_square_p(prob, seen, total), 0.001);
}

TEST(Generation, EveryEdgePositionIsFair) {
    // marginal frequency of each pair in conditioned draws
    std::array<std::uint64_t, kPairs> hits{};
    double expect[kPairs] = {};
    double norm = 0.0;
    for (unsigned mask = 0; mask < (1U << kPairs); ++mask) {
        if (!mask_connected(mask)) continue;
        const int m = __builtin_popcount(mask);
        const double w = std::pow(kP, m) * std::pow(1 - kP, kPairs - m);
        norm += w;
        for (int k = 0; k < kPairs; ++k)
            if (mask >> k & 1U) expect[k] += w;
    }
    const std::uint64_t total = 40000;
    for (std::uint64_t t = 0; t < total; ++t) {
        const unsigned mask = mask_of(sample_connected_gnp(kN, kP, TrialSeed{23, t}).graph);
        for (int k = 0; k < kPairs; ++k) hits[static_cast<std::size_t>(k)] += mask >> k & 1U;
    }
    for (int k = 0; k < kPairs; ++k) {
        const double pk = expect[k] / norm;
        const double sd = std::sqrt(pk * (1 - pk) / static_cast<double>(total));
        EXPECT_NEAR(static_cast<double>(hits[static_cast<std::size_t>(k)]) / static_cast<double>(total), pk, 5 * sd) << k;
    }
}

TEST(Generation, RejectionLimit) {
    // P(connected) for G(30, 0.01) is negligible
    try {
        sample_connected_gnp(30, 0.01, TrialSeed{1, 1}, 50);
        FAIL();
    } catch (const RejectionLimitError& e) {
        EXPECT_EQ(e.rejects(), 51u);
    }
    const auto s = sample_connected_gnp(10, 0.9, TrialSeed{1, 1}, 0);
    EXPECT_EQ(s.rejects, 0u);
}
