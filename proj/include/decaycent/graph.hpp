#pragma once

// Undirected simple graphs, connectivity, and BFS distance profiles.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace decaycent {

using NodeId = std::int32_t;

struct Edge {
    NodeId u;
    NodeId v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Malformed graph input (bad node id, self-loop, ...).
class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by distance computations on a graph that is not connected.
class DisconnectedGraphError : public GraphError {
public:
    using GraphError::GraphError;
};

/// Immutable undirected simple graph on nodes 0..n-1, stored as CSR with
/// neighbor lists sorted ascending.
class Graph {
public:
    Graph() = default;

    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return neighbors_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId v) const {
        const auto begin = offsets_[static_cast<std::size_t>(v)];
        const auto end = offsets_[static_cast<std::size_t>(v) + 1];
        return {neighbors_.data() + begin, end - begin};
    }

    std::size_t degree(NodeId v) const { return neighbors(v).size(); }

    bool has_edge(NodeId u, NodeId v) const;

    /// Canonical edge list: u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    friend Graph build_graph(std::size_t n, std::span<const Edge> edges);

    std::vector<std::size_t> offsets_;
    std::vector<NodeId> neighbors_;
};

/// Builds the canonical graph. Duplicate edges (in either orientation) are
/// collapsed; out-of-range ids and self-loops throw GraphError.
Graph build_graph(std::size_t n, std::span<const Edge> edges);

inline Graph build_graph(std::size_t n, std::initializer_list<Edge> edges) {
    return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

/// True iff every pair of nodes is joined by a path. The empty graph and the
/// singleton are connected.
bool is_connected(const Graph& g);

/// counts[l-1] = number of nodes at geodesic distance exactly l from `node`.
/// Always has length n-1; trailing entries past the eccentricity are zero.
struct DistanceProfile {
    NodeId node = 0;
    std::vector<std::int64_t> counts;

    std::int64_t degree() const { return counts.empty() ? 0 : counts.front(); }

    /// D^l for l >= 1; zero past the end.
    std::int64_t at_distance(std::size_t l) const {
        return l >= 1 && l <= counts.size() ? counts[l - 1] : 0;
    }

    /// Largest l with a nonzero count (0 for a singleton).
    std::size_t eccentricity() const;

    /// Sum of l * D^l, i.e. the total geodesic distance to all other nodes.
    std::int64_t farness() const;

    /// Same counts, ignoring which node they belong to.
    bool same_counts(const DistanceProfile& other) const { return counts == other.counts; }
};

/// Reusable BFS scratch space. One instance per thread; the graph itself is
/// never mutated, so concurrent searches over a shared graph are safe.
class BfsWorkspace {
public:
    /// Fills distances from `source`; unreachable nodes get -1. Returns the
    /// number of reached nodes, including the source.
    std::size_t run(const Graph& g, NodeId source);

    std::span<const std::int32_t> distances() const { return dist_; }

private:
    std::vector<std::int32_t> dist_;
    std::vector<NodeId> queue_;
};

/// Single-source BFS distances (-1 for unreachable nodes).
std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source);

/// BFS-exact distance profile. Throws DisconnectedGraphError when some node
/// is unreachable, and GraphError for an out-of-range node.
DistanceProfile distance_profile(const Graph& g, NodeId node);

/// Profiles of nodes 0..n-1 in order; one BFS per node, O(n*m) total.
std::vector<DistanceProfile> all_profiles(const Graph& g);

}  // namespace decaycent
