#pragma once

// Seeded Erdos-Renyi G(n,p) sampling, optionally conditioned on
// connectivity by rejection.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "decaycent/graph.hpp"

namespace decaycent {

/// Identifies the random stream of one trial. The stream depends only on
/// (master_seed, trial_index), never on scheduling.
struct TrialSeed {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;

    std::uint64_t stream_seed() const;
};

/// sample_connected_gnp gave up after `rejects` disconnected draws.
class RejectionLimitError : public std::runtime_error {
public:
    explicit RejectionLimitError(std::uint64_t rejects);

    std::uint64_t rejects() const { return rejects_; }

private:
    std::uint64_t rejects_;
};

inline constexpr std::uint64_t kDefaultMaxRejects = 100000;

/// Draws G(n,p) graphs from one trial stream. Pairs (u,v), u < v, are
/// visited in row-major order and selected by geometric skipping.
class GnpSampler {
public:
    /// Throws std::invalid_argument unless n >= 2 and 0 < p <= 1.
    GnpSampler(std::size_t n, double p, TrialSeed seed);

    /// One unconditioned draw.
    Graph draw();

    /// One draw conditioned on connectivity; nullopt when the draw is
    /// disconnected. A draw is abandoned as soon as some node is certain to
    /// be isolated, so rejected draws may consume fewer random numbers.
    std::optional<Graph> try_draw_connected();

private:
    bool fill(bool abandon_isolated);
    double uniform();

    std::size_t n_;
    double p_;
    double log_q_;
    std::mt19937_64 engine_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> degree_;
};

Graph sample_gnp(std::size_t n, double p, TrialSeed seed);

struct ConnectedSample {
    Graph graph;
    std::uint64_t rejects = 0;
};

/// First connected draw from the trial stream. Throws RejectionLimitError
/// when more than `max_rejects` draws are disconnected.
ConnectedSample sample_connected_gnp(std::size_t n, double p, TrialSeed seed,
                                     std::uint64_t max_rejects = kDefaultMaxRejects);

}  // namespace decaycent
