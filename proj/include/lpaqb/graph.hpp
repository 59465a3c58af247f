#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lpaqb/vertex_set.hpp"

namespace lpaqb {

using EdgeId = std::uint32_t;

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(column) +
                             ": " + msg),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

struct EdgeSpec {
    std::string name;
    std::string src;
    std::string rng;
};

// A finite directed multigraph with named vertices and edges. Vertex and
// edge declaration order is the canonical order used for all iteration,
// so every derived output is deterministic.
class Graph {
public:
    Graph(std::vector<std::string> vertex_names, std::vector<EdgeSpec> edges);

    /// Line format: "vertex <name>" / "edge <name> <src> <rng>", '#' comments.
    static Graph parse(std::string_view text);
    /// JSON format: {"vertices":[...],"edges":[{"name":..,"src":..,"rng":..}]}.
    static Graph parse_json(std::string_view json_text);
    /// Dispatches on extension: ".json" uses parse_json, anything else parse.
    static Graph load(const std::filesystem::path& path);

    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t edge_count() const { return edge_names_.size(); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
    const std::string& edge_name(EdgeId e) const { return edge_names_[e]; }
    VertexId src(EdgeId e) const { return edge_src_[e]; }
    VertexId rng(EdgeId e) const { return edge_rng_[e]; }

    std::optional<VertexId> find_vertex(std::string_view name) const;
    std::optional<EdgeId> find_edge(std::string_view name) const;
    VertexId vertex(std::string_view name) const;  // throws on unknown name
    EdgeId edge(std::string_view name) const;

    std::span<const EdgeId> out_edges(VertexId v) const { return out_[v]; }
    std::span<const EdgeId> in_edges(VertexId v) const { return in_[v]; }

    bool is_sink(VertexId v) const { return out_[v].empty(); }
    bool is_source(VertexId v) const { return in_[v].empty(); }
    bool is_regular(VertexId v) const { return !out_[v].empty(); }

    std::string str() const;  // round-trips through parse

private:
    std::vector<std::string> vertex_names_;
    std::vector<std::string> edge_names_;
    std::vector<VertexId> edge_src_;
    std::vector<VertexId> edge_rng_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
};

// A finite path: either a single vertex (length 0) or a composable edge
// sequence. Ordered lexicographically by (source, edge sequence).
class Path {
public:
    Path(const Graph& g, VertexId v);
    Path(const Graph& g, std::vector<EdgeId> edges);

    const Graph& graph() const { return *g_; }
    VertexId source() const { return src_; }
    VertexId range() const { return rng_; }
    std::size_t length() const { return edges_.size(); }
    bool trivial() const { return edges_.empty(); }
    std::span<const EdgeId> edges() const { return edges_; }

    Path extended(EdgeId e) const;
    Path parent() const;  // drops the last edge; length must be >= 1
    EdgeId last_edge() const { return edges_.back(); }

    /// True when this path's edge sequence is a prefix of longer's and the
    /// sources agree.
    bool is_prefix_of(const Path& longer) const;

    /// Vertices visited in order: source, then each edge range.
    std::vector<VertexId> visited_vertices() const;

    std::string str() const;  // dot-separated edge names, or the bare vertex name

    friend bool operator==(const Path& a, const Path& b) {
        return a.src_ == b.src_ && a.edges_ == b.edges_;
    }
    friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }
    friend bool operator<(const Path& a, const Path& b) {
        if (a.src_ != b.src_) return a.src_ < b.src_;
        return a.edges_ < b.edges_;
    }

private:
    const Graph* g_;
    VertexId src_;
    VertexId rng_;
    std::vector<EdgeId> edges_;
};

// A simple cycle: a nonempty path with source = range and pairwise distinct
// junction vertices, stored in canonical rotation (least junction first).
class Cycle {
public:
    explicit Cycle(Path path);

    const Path& path() const { return path_; }
    const std::vector<VertexId>& vertices() const { return vertices_; }  // sorted
    bool avoids(const VertexSet& set) const;

    std::string str() const { return path_.str(); }

    friend bool operator==(const Cycle& a, const Cycle& b) { return a.path_ == b.path_; }
    friend bool operator<(const Cycle& a, const Cycle& b) { return a.path_ < b.path_; }

private:
    Path path_;
    std::vector<VertexId> vertices_;
};

struct VertexClasses {
    std::vector<VertexId> sinks;
    std::vector<VertexId> sources;
    std::vector<VertexId> regular;
    std::vector<VertexId> infinite_emitters;  // always empty on finite graphs
};

VertexClasses vertex_classes(const Graph& g);

/// All paths of length <= max_len, vertex paths included, ordered by length
/// then canonical extension order.
std::vector<Path> enumerate_paths(const Graph& g, std::size_t max_len);

/// All simple cycles, one representative per rotation class.
std::vector<Cycle> simple_cycles(const Graph& g);

bool reaches(const Graph& g, VertexId v, VertexId w);
std::vector<bool> reachable_bits(const Graph& g, VertexId v);

/// T(v): every vertex reachable from v (v included).
VertexSet tree(const Graph& g, VertexId v);

/// Canonical fixture graphs: "loop", "toeplitz", "fork", "fail", "a2".
Graph fixture_graph(std::string_view name);
std::vector<std::string> fixture_names();

}  // namespace lpaqb
