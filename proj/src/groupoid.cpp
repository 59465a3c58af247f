#include "lpaqb/groupoid.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace lpaqb {

CylinderSet::CylinderSet(Path base_path, std::vector<EdgeId> excluded_edges)
    : base(std::move(base_path)), excluded(std::move(excluded_edges)) {
    const Graph& g = base.graph();
    for (EdgeId e : excluded) {
        if (g.src(e) != base.range())
            throw std::invalid_argument("excluded edge must leave the base range");
    }
    std::sort(excluded.begin(), excluded.end());
    excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
}

std::string CylinderSet::str() const {
    std::string out = "Z(" + base.str();
    if (!excluded.empty()) {
        out += "\\{";
        for (std::size_t i = 0; i < excluded.size(); ++i) {
            if (i) out += ',';
            out += base.graph().edge_name(excluded[i]);
        }
        out += '}';
    }
    return out + ")";
}

std::string BoundaryDescriptor::str() const {
    return path.str() + (complete ? "(complete)" : "(open)");
}

bool BoundaryDescriptor::within(const CylinderSet& z) const {
    if (!z.base.is_prefix_of(path)) return false;
    if (z.base.length() < path.length()) {
        EdgeId next = path.edges()[z.base.length()];
        return !std::binary_search(z.excluded.begin(), z.excluded.end(), next);
    }
    // Equal length: a complete path is the boundary path itself; an open
    // descriptor keeps extending, so exclusions leave some extension outside.
    return complete || z.excluded.empty();
}

bool BoundaryDescriptor::enters(const VertexSet& h) const {
    for (VertexId v : path.visited_vertices())
        if (h.contains(v)) return true;
    return false;
}

UhCover uh_cover(const Graph& g, const VertexSet& h) {
    require_hs(h, "uh_cover");
    FeResult fe = fe_paths(g, h);
    if (!fe.is_finite()) return UhCover{false, {}, std::move(fe)};
    UhCover cover{true, {}, std::nullopt};
    for (VertexId v : h.members()) cover.sets.emplace_back(Path(g, v));
    for (const Path& alpha : fe.paths()) cover.sets.emplace_back(alpha);
    return cover;
}

bool is_uh_compact(const Graph& g, const VertexSet& h) {
    require_hs(h, "is_uh_compact");
    return fe_paths(g, h).is_finite();
}

std::vector<BoundaryDescriptor> boundary_paths_to_depth(const Graph& g, std::size_t depth) {
    std::vector<BoundaryDescriptor> out;
    for (const Path& p : enumerate_paths(g, depth)) {
        if (g.is_sink(p.range())) {
            out.push_back({p, true});
        } else if (p.length() == depth) {
            out.push_back({p, false});
        }
    }
    return out;
}

std::size_t default_depth(const Graph& g) { return std::max<std::size_t>(6, g.vertex_count() + 2); }

PartitionReport partition_check(const Graph& g, const VertexSet& h, std::size_t depth) {
    require_hs(h, "partition_check");
    UhCover cover = uh_cover(g, h);
    if (!cover.compact)
        throw std::invalid_argument("partition_check: U_H is not compact for {" + h.str() + "}");
    VertexSet htc = tc_complement(g, h);
    UhCover tc_cover = uh_cover(g, htc);
    if (!tc_cover.compact)
        throw std::logic_error("U_Htc must be compact whenever U_H is");

    PartitionReport report{h, htc};
    report.depth = depth;
    report.cover = cover.sets;
    report.tc_cover = tc_cover.sets;
    report.partition_ok = true;
    for (const BoundaryDescriptor& d : boundary_paths_to_depth(g, depth)) {
        PartitionReport::Assignment a{d, 0, -1, 0};
        for (std::size_t i = 0; i < cover.sets.size(); ++i) {
            if (d.within(cover.sets[i])) {
                ++a.matches;
                a.side = 0;
                a.member = i;
            }
        }
        for (std::size_t i = 0; i < tc_cover.sets.size(); ++i) {
            if (d.within(tc_cover.sets[i])) {
                ++a.matches;
                a.side = 1;
                a.member = i;
            }
        }
        if (a.matches != 1) {
            a.side = -1;
            report.partition_ok = false;
        }
        report.assignments.push_back(std::move(a));
    }
    return report;
}

std::string PartitionReport::to_json_string() const {
    nlohmann::ordered_json j;
    j["H"] = h.str();
    j["compact"] = compact;
    auto cover_json = [](const std::vector<CylinderSet>& sets) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& z : sets) arr.push_back(z.str());
        return arr;
    };
    j["cover"] = cover_json(cover);
    j["tc_cover"] = cover_json(tc_cover);
    j["depth"] = depth;
    j["partition_ok"] = partition_ok;
    return j.dump();
}

}  // namespace lpaqb
