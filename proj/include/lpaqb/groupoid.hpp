#pragma once

#include <optional>
#include <vector>

#include "lpaqb/hs_lattice.hpp"

namespace lpaqb {

// Z(mu \ F): boundary paths extending mu but not through any edge in F.
// Every excluded edge leaves r(mu). F empty gives the plain cylinder Z(mu).
struct CylinderSet {
    Path base;
    std::vector<EdgeId> excluded;  // ascending

    CylinderSet(Path base_path, std::vector<EdgeId> excluded_edges = {});
    std::string str() const;
};

// Finite truncation of a boundary path: complete paths end at a sink and
// stand for themselves; open descriptors are depth-D prefixes of longer
// (possibly infinite) boundary paths.
struct BoundaryDescriptor {
    Path path;
    bool complete;

    std::string str() const;
    /// True when every boundary path extending this descriptor lies in z.
    bool within(const CylinderSet& z) const;
    /// Membership in U_H: some visited vertex lies in H (complete case only
    /// needs the visited prefix; open descriptors use the same test).
    bool enters(const VertexSet& h) const;
};

// The disjoint cylinder cover of U_H when F_E(H) is finite, or a
// noncompact marker carrying the infiniteness witness.
struct UhCover {
    bool compact;
    std::vector<CylinderSet> sets;         // {Z(v) : v in H} then {Z(a) : a in F_E(H)}
    std::optional<FeResult> witness;       // present iff noncompact
};

UhCover uh_cover(const Graph& g, const VertexSet& h);
bool is_uh_compact(const Graph& g, const VertexSet& h);

/// Complete paths of length <= depth plus open truncations of length
/// exactly depth; a finite surrogate for the boundary path space.
std::vector<BoundaryDescriptor> boundary_paths_to_depth(const Graph& g, std::size_t depth);

std::size_t default_depth(const Graph& g);  // max(6, |vertices| + 2)

struct PartitionReport {
    VertexSet h;
    VertexSet htc;
    bool compact = true;
    std::size_t depth = 0;
    std::vector<CylinderSet> cover;
    std::vector<CylinderSet> tc_cover;

    struct Assignment {
        BoundaryDescriptor descriptor;
        std::size_t matches;   // across both covers; 1 when the partition holds
        int side;              // 0 = U_H, 1 = U_Htc, -1 when matches != 1
        std::size_t member;    // index into the matching cover
    };
    std::vector<Assignment> assignments;
    bool partition_ok = false;

    std::string to_json_string() const;
};

/// Verifies, at the given depth, that the boundary descriptors fall into
/// exactly one member of cover(H) + cover(H^tc). Requires U_H compact.
PartitionReport partition_check(const Graph& g, const VertexSet& h, std::size_t depth);

}  // namespace lpaqb
