#include "decaycent/generation.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace decaycent {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), components_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[b] = a;
            --components_;
        }
    }

    std::size_t components() const { return components_; }

private:
    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    std::vector<std::size_t> parent_;
    std::size_t components_;
};

}  // namespace

std::uint64_t TrialSeed::stream_seed() const {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(trial_index + 0x632BE59BD9B4E019ULL));
}

RejectionLimitError::RejectionLimitError(std::uint64_t rejects)
    : std::runtime_error("no connected graph after " + std::to_string(rejects) + " rejected draws"),
      rejects_(rejects) {}

GnpSampler::GnpSampler(std::size_t n, double p, TrialSeed seed)
    : n_(n), p_(p), log_q_(0.0), engine_(seed.stream_seed()) {
    if (n < 2) {
        throw std::invalid_argument("G(n,p) needs n >= 2");
    }
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("G(n,p) needs 0 < p <= 1");
    }
    log_q_ = std::log1p(-p);
    degree_.resize(n);
}

double GnpSampler::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

bool GnpSampler::fill(bool abandon_isolated) {
    edges_.clear();
    std::fill(degree_.begin(), degree_.end(), 0U);
    const std::uint64_t n = n_;
    const std::uint64_t pairs = n * (n - 1) / 2;

    if (p_ >= 1.0) {
        for (std::uint64_t u = 0; u < n; ++u) {
            for (std::uint64_t v = u + 1; v < n; ++v) {
                edges_.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
            }
        }
        std::fill(degree_.begin(), degree_.end(), static_cast<std::uint32_t>(n - 1));
        return true;
    }

    std::uint64_t pos = 0;
    std::uint64_t row = 0;
    std::uint64_t row_start = 0;
    std::uint64_t row_len = n - 1;
    while (true) {
        // Number of unselected pairs before the next selected one.
        const double skip = std::floor(std::log1p(-uniform()) / log_q_);
        if (skip >= static_cast<double>(pairs - pos)) {
            break;
        }
        pos += static_cast<std::uint64_t>(skip);
        while (pos >= row_start + row_len) {
            if (abandon_isolated && degree_[row] == 0) {
                return false;
            }
            row_start += row_len;
            ++row;
            --row_len;
        }
        const std::uint64_t col = row + 1 + (pos - row_start);
        edges_.push_back({static_cast<NodeId>(row), static_cast<NodeId>(col)});
        ++degree_[row];
        ++degree_[col];
        ++pos;
    }
    return true;
}

Graph GnpSampler::draw() {
    fill(false);
    return build_graph(n_, edges_);
}

std::optional<Graph> GnpSampler::try_draw_connected() {
    if (!fill(true) || edges_.size() + 1 < n_) {
        return std::nullopt;
    }
    DisjointSets sets(n_);
    for (const auto& e : edges_) {
        sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
    }
    if (sets.components() != 1) {
        return std::nullopt;
    }
    return build_graph(n_, edges_);
}

Graph sample_gnp(std::size_t n, double p, TrialSeed seed) {
    GnpSampler sampler(n, p, seed);
    return sampler.draw();
}

ConnectedSample sample_connected_gnp(std::size_t n, double p, TrialSeed seed, std::uint64_t max_rejects) {
    GnpSampler sampler(n, p, seed);
    std::uint64_t rejects = 0;
    while (true) {
        if (auto g = sampler.try_draw_connected()) {
            return {std::move(*g), rejects};
        }
        if (rejects == max_rejects) {
            throw RejectionLimitError(rejects + 1);
        }
        ++rejects;
    }
}

}  // namespace decaycent
