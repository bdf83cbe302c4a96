#include "decaycent/graph.hpp"

#include <algorithm>
#include <string>

namespace decaycent {

namespace {

void check_node(std::size_t n, NodeId v) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw GraphError("node id " + std::to_string(v) + " out of range for n=" + std::to_string(n));
    }
}

}  // namespace

Graph build_graph(std::size_t n, std::span<const Edge> edges) {
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const auto& e : edges) {
        check_node(n, e.u);
        check_node(n, e.v);
        if (e.u == e.v) {
            throw GraphError("self-loop at node " + std::to_string(e.u));
        }
        canon.push_back(e.u < e.v ? e : Edge{e.v, e.u});
    }
    std::sort(canon.begin(), canon.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

    std::vector<std::size_t> degree(n, 0);
    for (const auto& e : canon) {
        ++degree[static_cast<std::size_t>(e.u)];
        ++degree[static_cast<std::size_t>(e.v)];
    }

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    }
    g.neighbors_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : canon) {
        g.neighbors_[cursor[static_cast<std::size_t>(e.u)]++] = e.v;
    }
    for (const auto& e : canon) {
        g.neighbors_[cursor[static_cast<std::size_t>(e.v)]++] = e.u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                  g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    }
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t u = 0; u < node_count(); ++u) {
        for (NodeId v : neighbors(static_cast<NodeId>(u))) {
            if (static_cast<NodeId>(u) < v) {
                out.push_back({static_cast<NodeId>(u), v});
            }
        }
    }
    return out;
}

bool is_connected(const Graph& g) {
    if (g.node_count() <= 1) {
        return true;
    }
    BfsWorkspace ws;
    return ws.run(g, 0) == g.node_count();
}

std::size_t DistanceProfile::eccentricity() const {
    for (std::size_t l = counts.size(); l > 0; --l) {
        if (counts[l - 1] != 0) {
            return l;
        }
    }
    return 0;
}

std::int64_t DistanceProfile::farness() const {
    std::int64_t total = 0;
    for (std::size_t l = 1; l <= counts.size(); ++l) {
        total += static_cast<std::int64_t>(l) * counts[l - 1];
    }
    return total;
}

std::size_t BfsWorkspace::run(const Graph& g, NodeId source) {
    const std::size_t n = g.node_count();
    dist_.assign(n, -1);
    queue_.resize(n);
    std::size_t head = 0;
    std::size_t tail = 0;
    dist_[static_cast<std::size_t>(source)] = 0;
    queue_[tail++] = source;
    while (head < tail) {
        const NodeId u = queue_[head++];
        const auto du = dist_[static_cast<std::size_t>(u)];
        for (NodeId v : g.neighbors(u)) {
            auto& dv = dist_[static_cast<std::size_t>(v)];
            if (dv < 0) {
                dv = du + 1;
                queue_[tail++] = v;
            }
        }
    }
    return tail;
}

std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source) {
    check_node(g.node_count(), source);
    BfsWorkspace ws;
    ws.run(g, source);
    return {ws.distances().begin(), ws.distances().end()};
}

namespace {

DistanceProfile profile_from(BfsWorkspace& ws, const Graph& g, NodeId node) {
    const std::size_t n = g.node_count();
    if (ws.run(g, node) != n) {
        throw DisconnectedGraphError("graph is not connected: distances from node " +
                                     std::to_string(node) + " are undefined");
    }
    DistanceProfile p;
    p.node = node;
    p.counts.assign(n - 1, 0);
    for (auto d : ws.distances()) {
        if (d > 0) {
            ++p.counts[static_cast<std::size_t>(d) - 1];
        }
    }
    return p;
}

}  // namespace

DistanceProfile distance_profile(const Graph& g, NodeId node) {
    check_node(g.node_count(), node);
    BfsWorkspace ws;
    return profile_from(ws, g, node);
}

std::vector<DistanceProfile> all_profiles(const Graph& g) {
    BfsWorkspace ws;
    std::vector<DistanceProfile> out;
    out.reserve(g.node_count());
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        out.push_back(profile_from(ws, g, static_cast<NodeId>(v)));
    }
    return out;
}

}  // namespace decaycent
