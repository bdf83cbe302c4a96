#include "decaycent/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace decaycent {

namespace {

bool skippable(std::string_view line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string_view::npos || line[pos] == '#';
}

// Parses exactly `count` non-negative integers from a line.
std::vector<long long> parse_ints(std::string_view line, std::size_t count, std::size_t line_no) {
    std::vector<long long> out;
    std::size_t pos = 0;
    while (true) {
        pos = line.find_first_not_of(" \t\r", pos);
        if (pos == std::string_view::npos) {
            break;
        }
        const auto end = std::min(line.find_first_of(" \t\r", pos), line.size());
        long long value = 0;
        const auto token = line.substr(pos, end - pos);
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || value < 0) {
            throw ParseError("expected a non-negative integer, got '" + std::string(token) + "'", line_no);
        }
        out.push_back(value);
        pos = end;
    }
    if (out.size() != count) {
        throw ParseError("expected " + std::to_string(count) + " integers, got " +
                             std::to_string(out.size()),
                         line_no);
    }
    return out;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    long long n = 0;
    long long m = 0;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) {
            continue;
        }
        if (!have_header) {
            const auto header = parse_ints(line, 2, line_no);
            n = header[0];
            m = header[1];
            if (n > INT32_MAX) {
                throw ParseError("node count too large", line_no);
            }
            have_header = true;
            edges.reserve(static_cast<std::size_t>(m));
            continue;
        }
        const auto uv = parse_ints(line, 2, line_no);
        if (uv[0] >= n || uv[1] >= n) {
            throw ParseError("node id out of range for n=" + std::to_string(n), line_no);
        }
        if (uv[0] == uv[1]) {
            throw ParseError("self-loop at node " + std::to_string(uv[0]), line_no);
        }
        edges.push_back({static_cast<NodeId>(uv[0]), static_cast<NodeId>(uv[1])});
    }
    if (!have_header) {
        throw ParseError("missing 'n m' header", 0);
    }
    if (static_cast<long long>(edges.size()) != m) {
        throw ParseError("header declares " + std::to_string(m) + " edges, found " +
                             std::to_string(edges.size()),
                         0);
    }
    return build_graph(static_cast<std::size_t>(n), edges);
}

Graph parse_graph_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
        throw ParseError("JSON graph needs keys \"n\" and \"edges\"", 0);
    }
    const auto& jn = doc["n"];
    if (!jn.is_number_integer() || jn.get<long long>() < 0 || jn.get<long long>() > INT32_MAX) {
        throw ParseError("\"n\" must be a non-negative integer", 0);
    }
    const auto& jedges = doc["edges"];
    if (!jedges.is_array()) {
        throw ParseError("\"edges\" must be an array", 0);
    }
    std::vector<Edge> edges;
    edges.reserve(jedges.size());
    for (std::size_t k = 0; k < jedges.size(); ++k) {
        const auto& e = jedges[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw ParseError("edge #" + std::to_string(k) + " must be a pair of integers", 0);
        }
        const auto u = e[0].get<long long>();
        const auto v = e[1].get<long long>();
        if (u < 0 || v < 0 || u >= jn.get<long long>() || v >= jn.get<long long>()) {
            throw ParseError("edge #" + std::to_string(k) + " has an invalid node id", 0);
        }
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    return build_graph(jn.get<std::size_t>(), edges);
}

Graph read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw GraphError("cannot open graph file '" + path.string() + "'");
    }
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return parse_graph_json(text);
    }
    std::istringstream stream(text);
    return parse_edge_list(stream);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    const auto edges = g.edges();
    out << g.node_count() << ' ' << edges.size() << '\n';
    for (const auto& e : edges) {
        out << e.u << ' ' << e.v << '\n';
    }
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
}

std::string to_graph_json(const Graph& g) {
    nlohmann::json doc;
    doc["n"] = g.node_count();
    doc["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges()) {
        doc["edges"].push_back({e.u, e.v});
    }
    return doc.dump();
}

}  // namespace decaycent
