#pragma once

// Graph file formats.
//
//   edge list:  first line "n m", then m lines "u v" (0-based, whitespace
//               separated). Blank lines and lines starting with '#' are skipped.
//   JSON:       {"n": int, "edges": [[u, v], ...]}

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "decaycent/graph.hpp"

namespace decaycent {

/// Parse failure; `line()` is 1-based, or 0 when not tied to a line.
class ParseError : public GraphError {
public:
    ParseError(const std::string& what, std::size_t line)
        : GraphError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

Graph parse_edge_list(std::istream& in);
Graph parse_graph_json(std::string_view text);

/// Reads a graph file; JSON when the first non-blank character is '{',
/// edge list otherwise.
Graph read_graph_file(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);
std::string to_graph_json(const Graph& g);

}  // namespace decaycent
