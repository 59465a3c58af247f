#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace lpaqb {

class Graph;
using VertexId = std::uint32_t;

// An immutable subset of one graph's vertices. The hereditary/saturated
// flags are computed once at construction and cached.
class VertexSet {
public:
    VertexSet(const Graph& g, std::vector<bool> bits);

    static VertexSet empty(const Graph& g);
    static VertexSet universe(const Graph& g);
    static VertexSet of(const Graph& g, std::initializer_list<VertexId> ids);
    static VertexSet of_ids(const Graph& g, const std::vector<VertexId>& ids);
    /// Builds from a comma-separated list of vertex names ("u,w"); "" is empty.
    static VertexSet parse(const Graph& g, std::string_view names);

    const Graph& graph() const { return *g_; }
    const std::vector<bool>& bits() const { return bits_; }
    bool contains(VertexId v) const { return bits_[v]; }
    std::size_t size() const;
    bool is_empty() const { return size() == 0; }
    std::vector<VertexId> members() const;  // ascending canonical order

    bool hereditary() const { return hereditary_; }
    bool saturated() const { return saturated_; }

    VertexSet unite(const VertexSet& other) const;
    VertexSet complement() const;

    bool is_subset_of(const VertexSet& other) const;
    bool intersects(const VertexSet& other) const;

    /// Comma-separated, sorted by vertex name.
    std::string str() const;

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.g_ == b.g_ && a.bits_ == b.bits_;
    }
    friend bool operator!=(const VertexSet& a, const VertexSet& b) { return !(a == b); }
    friend bool operator<(const VertexSet& a, const VertexSet& b) { return a.bits_ < b.bits_; }

private:
    const Graph* g_;
    std::vector<bool> bits_;
    bool hereditary_;
    bool saturated_;
};

}  // namespace lpaqb
