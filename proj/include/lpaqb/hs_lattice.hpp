#pragma once

#include <optional>
#include <vector>

#include "lpaqb/graph.hpp"
#include "lpaqb/vertex_set.hpp"

namespace lpaqb {

/// Closed under out-edges: v in S implies every edge range from v is in S.
bool is_hereditary(const Graph& g, const std::vector<bool>& bits);
/// Contains every regular vertex all of whose out-edge ranges lie inside.
bool is_saturated(const Graph& g, const std::vector<bool>& bits);

bool is_hereditary(const Graph& g, const VertexSet& s);
bool is_saturated(const Graph& g, const VertexSet& s);

/// Least hereditary and saturated superset.
VertexSet saturated_closure(const Graph& g, const VertexSet& s);

/// Every hereditary saturated subset (empty set and full set included),
/// ordered by cardinality then canonical vertex order.
std::vector<VertexSet> enumerate_hs(const Graph& g);

/// H^tc (also written H^perp): vertices whose tree misses H. Requires H
/// hereditary and saturated.
VertexSet tc_complement(const Graph& g, const VertexSet& h);

/// Lattice join: saturated closure of the union. Both arguments must be
/// hereditary and saturated.
VertexSet hs_join(const Graph& g, const VertexSet& h1, const VertexSet& h2);

struct FeWitness {
    Cycle cycle;  // all vertices outside H
    Path entry;   // from a cycle vertex into H, interior ranges outside H
};

// F_E(H) when finite, or an infiniteness witness. Finite members are the
// paths entering H for the first time at their last edge.
class FeResult {
public:
    static FeResult finite(std::vector<Path> paths);
    static FeResult infinite(FeWitness witness);

    bool is_finite() const { return finite_; }
    const std::vector<Path>& paths() const;
    const FeWitness& witness() const;

    std::string to_json_string() const;

private:
    FeResult() = default;
    bool finite_ = true;
    std::vector<Path> paths_;
    std::optional<FeWitness> witness_;
};

/// Decides finiteness of F_E(H) by cycle reachability and, when finite,
/// enumerates it completely. Requires H hereditary and saturated.
FeResult fe_paths(const Graph& g, const VertexSet& h);

/// Shortest first-entry path into `target` starting at `from`, interior
/// ranges outside `target`; nullopt when `target` is unreachable.
std::optional<Path> first_entry_path(const Graph& g, VertexId from, const VertexSet& target);

void require_hs(const VertexSet& s, const char* who);

}  // namespace lpaqb
