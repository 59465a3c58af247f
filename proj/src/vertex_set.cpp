#include "lpaqb/vertex_set.hpp"

#include <algorithm>
#include <stdexcept>

#include "lpaqb/graph.hpp"
#include "lpaqb/hs_lattice.hpp"

namespace lpaqb {

VertexSet::VertexSet(const Graph& g, std::vector<bool> bits) : g_(&g), bits_(std::move(bits)) {
    if (bits_.size() != g.vertex_count())
        throw std::invalid_argument("vertex set size does not match graph");
    hereditary_ = is_hereditary(g, bits_);
    saturated_ = is_saturated(g, bits_);
}

VertexSet VertexSet::empty(const Graph& g) {
    return VertexSet(g, std::vector<bool>(g.vertex_count(), false));
}

VertexSet VertexSet::universe(const Graph& g) {
    return VertexSet(g, std::vector<bool>(g.vertex_count(), true));
}

VertexSet VertexSet::of(const Graph& g, std::initializer_list<VertexId> ids) {
    return of_ids(g, std::vector<VertexId>(ids));
}

VertexSet VertexSet::of_ids(const Graph& g, const std::vector<VertexId>& ids) {
    std::vector<bool> bits(g.vertex_count(), false);
    for (VertexId v : ids) {
        if (v >= g.vertex_count()) throw std::invalid_argument("vertex id out of range");
        bits[v] = true;
    }
    return VertexSet(g, std::move(bits));
}

VertexSet VertexSet::parse(const Graph& g, std::string_view names) {
    std::vector<bool> bits(g.vertex_count(), false);
    std::size_t pos = 0;
    while (pos < names.size()) {
        std::size_t comma = names.find(',', pos);
        std::string_view name = names.substr(pos, comma == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : comma - pos);
        bits[g.vertex(name)] = true;
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return VertexSet(g, std::move(bits));
}

std::size_t VertexSet::size() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<VertexId> VertexSet::members() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < bits_.size(); ++v)
        if (bits_[v]) out.push_back(v);
    return out;
}

VertexSet VertexSet::unite(const VertexSet& other) const {
    if (g_ != other.g_) throw std::invalid_argument("vertex sets from different graphs");
    std::vector<bool> bits(bits_);
    for (std::size_t v = 0; v < bits.size(); ++v)
        if (other.bits_[v]) bits[v] = true;
    return VertexSet(*g_, std::move(bits));
}

VertexSet VertexSet::complement() const {
    std::vector<bool> bits(bits_.size());
    for (std::size_t v = 0; v < bits.size(); ++v) bits[v] = !bits_[v];
    return VertexSet(*g_, std::move(bits));
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    if (g_ != other.g_) throw std::invalid_argument("vertex sets from different graphs");
    for (std::size_t v = 0; v < bits_.size(); ++v)
        if (bits_[v] && !other.bits_[v]) return false;
    return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
    if (g_ != other.g_) throw std::invalid_argument("vertex sets from different graphs");
    for (std::size_t v = 0; v < bits_.size(); ++v)
        if (bits_[v] && other.bits_[v]) return true;
    return false;
}

std::string VertexSet::str() const {
    std::vector<std::string> names;
    for (VertexId v : members()) names.push_back(g_->vertex_name(v));
    std::sort(names.begin(), names.end());
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
    return out;
}

}  // namespace lpaqb
