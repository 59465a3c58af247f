#include "lpaqb/hs_lattice.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lpaqb {

bool is_hereditary(const Graph& g, const std::vector<bool>& bits) {
    // One-step closure is equivalent to closure under reachability.
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (bits[g.src(e)] && !bits[g.rng(e)]) return false;
    return true;
}

bool is_saturated(const Graph& g, const std::vector<bool>& bits) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!g.is_regular(v) || bits[v]) continue;
        bool all_inside = true;
        for (EdgeId e : g.out_edges(v))
            if (!bits[g.rng(e)]) { all_inside = false; break; }
        if (all_inside) return false;
    }
    return true;
}

bool is_hereditary(const Graph& g, const VertexSet& s) { return is_hereditary(g, s.bits()); }
bool is_saturated(const Graph& g, const VertexSet& s) { return is_saturated(g, s.bits()); }

void require_hs(const VertexSet& s, const char* who) {
    if (!s.hereditary() || !s.saturated())
        throw std::invalid_argument(std::string(who) + ": subset {" + s.str() +
                                    "} is not hereditary and saturated");
}

namespace {

std::vector<bool> closure_bits(const Graph& g, std::vector<bool> bits) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (bits[g.src(e)] && !bits[g.rng(e)]) {
                bits[g.rng(e)] = true;
                changed = true;
            }
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (bits[v] || !g.is_regular(v)) continue;
            bool all_inside = true;
            for (EdgeId e : g.out_edges(v))
                if (!bits[g.rng(e)]) { all_inside = false; break; }
            if (all_inside) {
                bits[v] = true;
                changed = true;
            }
        }
    }
    return bits;
}

}  // namespace

VertexSet saturated_closure(const Graph& g, const VertexSet& s) {
    return VertexSet(g, closure_bits(g, s.bits()));
}

std::vector<VertexSet> enumerate_hs(const Graph& g) {
    // Every hereditary saturated set is a join of singleton closures, so the
    // lattice is the closure of {empty, closure({v})} under pairwise join.
    std::vector<std::vector<bool>> generators;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<bool> single(g.vertex_count(), false);
        single[v] = true;
        generators.push_back(closure_bits(g, std::move(single)));
    }
    std::set<std::vector<bool>> seen;
    std::deque<std::vector<bool>> work;
    auto push = [&](std::vector<bool> bits) {
        if (seen.insert(bits).second) work.push_back(std::move(bits));
    };
    push(std::vector<bool>(g.vertex_count(), false));
    while (!work.empty()) {
        std::vector<bool> current = std::move(work.front());
        work.pop_front();
        for (const auto& gen : generators) {
            std::vector<bool> joined(current);
            for (std::size_t v = 0; v < joined.size(); ++v)
                if (gen[v]) joined[v] = true;
            push(closure_bits(g, std::move(joined)));
        }
    }
    std::vector<VertexSet> out;
    for (const auto& bits : seen) out.emplace_back(g, bits);
    std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.members() < b.members();
    });
    return out;
}

VertexSet tc_complement(const Graph& g, const VertexSet& h) {
    require_hs(h, "tc_complement");
    std::vector<bool> bits(g.vertex_count(), false);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        std::vector<bool> t = reachable_bits(g, u);
        bool meets = false;
        for (VertexId w = 0; w < g.vertex_count(); ++w)
            if (t[w] && h.contains(w)) { meets = true; break; }
        bits[u] = !meets;
    }
    return VertexSet(g, std::move(bits));
}

VertexSet hs_join(const Graph& g, const VertexSet& h1, const VertexSet& h2) {
    require_hs(h1, "hs_join");
    require_hs(h2, "hs_join");
    return saturated_closure(g, h1.unite(h2));
}

FeResult FeResult::finite(std::vector<Path> paths) {
    FeResult r;
    r.finite_ = true;
    r.paths_ = std::move(paths);
    return r;
}

FeResult FeResult::infinite(FeWitness witness) {
    FeResult r;
    r.finite_ = false;
    r.witness_ = std::move(witness);
    return r;
}

const std::vector<Path>& FeResult::paths() const {
    if (!finite_) throw std::logic_error("F_E(H) is infinite; no path list");
    return paths_;
}

const FeWitness& FeResult::witness() const {
    if (finite_) throw std::logic_error("F_E(H) is finite; no witness");
    return *witness_;
}

std::string FeResult::to_json_string() const {
    nlohmann::ordered_json j;
    j["finite"] = finite_;
    if (finite_) {
        auto arr = nlohmann::ordered_json::array();
        for (const Path& p : paths_) arr.push_back(p.str());
        j["paths"] = arr;
    } else {
        j["witness_cycle"] = witness_->cycle.str();
        j["witness_path"] = witness_->entry.str();
    }
    return j.dump();
}

std::optional<Path> first_entry_path(const Graph& g, VertexId from, const VertexSet& target) {
    if (target.contains(from)) return Path(g, from);
    // BFS through the complement of the target; the first edge landing in
    // the target closes the path, so interiors stay outside by construction.
    std::vector<std::optional<EdgeId>> back(g.vertex_count());
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<VertexId> queue{from};
    seen[from] = true;
    auto assemble = [&](EdgeId final_edge) {
        std::vector<EdgeId> rev{final_edge};
        VertexId at = g.src(final_edge);
        while (at != from) {
            EdgeId e = *back[at];
            rev.push_back(e);
            at = g.src(e);
        }
        std::reverse(rev.begin(), rev.end());
        return Path(g, std::move(rev));
    };
    while (!queue.empty()) {
        VertexId x = queue.front();
        queue.pop_front();
        for (EdgeId e : g.out_edges(x)) {
            VertexId w = g.rng(e);
            if (target.contains(w)) return assemble(e);
            if (!seen[w]) {
                seen[w] = true;
                back[w] = e;
                queue.push_back(w);
            }
        }
    }
    return std::nullopt;
}

namespace {

void collect_fe(const Graph& g, const VertexSet& h, Path prefix, std::size_t max_len,
                std::vector<Path>& out) {
    for (EdgeId e : g.out_edges(prefix.range())) {
        VertexId w = g.rng(e);
        if (h.contains(w)) {
            out.push_back(prefix.extended(e));
        } else if (prefix.length() + 1 < max_len) {
            collect_fe(g, h, prefix.extended(e), max_len, out);
        }
    }
}

// Tarjan over the subgraph induced by `allowed`; flags the vertices that
// lie on some cycle avoiding the forbidden set (SCC of size >= 2, or a
// self-loop).
class CycleVertexFinder {
public:
    CycleVertexFinder(const Graph& g, const std::vector<bool>& allowed)
        : g_(g), allowed_(allowed), comp_(g.vertex_count(), kUnset),
          index_(g.vertex_count(), kUnset), low_(g.vertex_count(), 0),
          on_stack_(g.vertex_count(), false) {
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (allowed_[v] && index_[v] == kUnset) strongconnect_(v);
        comp_size_.assign(next_comp_, 0);
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (allowed_[v]) ++comp_size_[comp_[v]];
    }

    bool on_cycle(VertexId v) const {
        if (!allowed_[v]) return false;
        if (comp_size_[comp_[v]] >= 2) return true;
        for (EdgeId e : g_.out_edges(v))
            if (g_.rng(e) == v) return true;
        return false;
    }

    bool same_component(VertexId v, VertexId w) const {
        return allowed_[v] && allowed_[w] && comp_[v] == comp_[w];
    }

private:
    static constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);

    void strongconnect_(VertexId v) {
        index_[v] = low_[v] = counter_++;
        stack_.push_back(v);
        on_stack_[v] = true;
        for (EdgeId e : g_.out_edges(v)) {
            VertexId w = g_.rng(e);
            if (!allowed_[w]) continue;
            if (index_[w] == kUnset) {
                strongconnect_(w);
                low_[v] = std::min(low_[v], low_[w]);
            } else if (on_stack_[w]) {
                low_[v] = std::min(low_[v], index_[w]);
            }
        }
        if (low_[v] == index_[v]) {
            while (true) {
                VertexId w = stack_.back();
                stack_.pop_back();
                on_stack_[w] = false;
                comp_[w] = next_comp_;
                if (w == v) break;
            }
            ++next_comp_;
        }
    }

    const Graph& g_;
    const std::vector<bool>& allowed_;
    std::vector<std::uint32_t> comp_, index_, low_;
    std::vector<bool> on_stack_;
    std::vector<VertexId> stack_;
    std::uint32_t counter_ = 0;
    std::uint32_t next_comp_ = 0;
};

// Any simple cycle through v inside `allowed`; v must lie on one.
Cycle simple_cycle_through(const Graph& g, VertexId v, const std::vector<bool>& allowed) {
    std::vector<EdgeId> stack;
    std::vector<bool> on_path(g.vertex_count(), false);
    on_path[v] = true;

    std::function<bool(VertexId)> dfs = [&](VertexId x) {
        for (EdgeId e : g.out_edges(x)) {
            VertexId w = g.rng(e);
            if (w == v) {
                stack.push_back(e);
                return true;
            }
            if (allowed[w] && !on_path[w]) {
                on_path[w] = true;
                stack.push_back(e);
                if (dfs(w)) return true;
                stack.pop_back();
                on_path[w] = false;
            }
        }
        return false;
    };
    if (!dfs(v)) throw std::logic_error("no cycle through supposed cycle vertex");
    return Cycle(Path(g, std::move(stack)));
}

}  // namespace

FeResult fe_paths(const Graph& g, const VertexSet& h) {
    require_hs(h, "fe_paths");
    // F_E(H) is infinite iff some vertex outside H lies on a cycle avoiding
    // H and reaches H; cycles avoiding H live in the induced subgraph.
    std::vector<bool> outside(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) outside[v] = !h.contains(v);
    CycleVertexFinder finder(g, outside);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!outside[v] || !finder.on_cycle(v)) continue;
        auto entry = first_entry_path(g, v, h);
        if (!entry || entry->length() == 0) continue;
        std::vector<bool> component(g.vertex_count(), false);
        for (VertexId w = 0; w < g.vertex_count(); ++w)
            component[w] = finder.same_component(v, w);
        Cycle cycle = simple_cycle_through(g, v, component);
        return FeResult::infinite(FeWitness{std::move(cycle), std::move(*entry)});
    }
    // No cycle outside H leads to H: every member has length <= |vertices|
    // (a longer member repeats an outside vertex, which is such a cycle).
    std::vector<Path> members;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (h.contains(v)) continue;
        collect_fe(g, h, Path(g, v), g.vertex_count(), members);
    }
    std::sort(members.begin(), members.end());
    return FeResult::finite(std::move(members));
}

}  // namespace lpaqb
