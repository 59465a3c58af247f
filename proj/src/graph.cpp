#include "lpaqb/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace lpaqb {

namespace {

bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

}  // namespace

Graph::Graph(std::vector<std::string> vertex_names, std::vector<EdgeSpec> edges) {
    if (vertex_names.empty()) throw std::invalid_argument("graph must have at least one vertex");
    std::map<std::string, VertexId, std::less<>> vid;
    for (auto& name : vertex_names) {
        if (!valid_name(name)) throw std::invalid_argument("bad vertex name \"" + name + "\"");
        if (!vid.emplace(name, static_cast<VertexId>(vertex_names_.size())).second)
            throw std::invalid_argument("duplicate vertex name \"" + name + "\"");
        vertex_names_.push_back(std::move(name));
    }
    out_.resize(vertex_names_.size());
    in_.resize(vertex_names_.size());
    std::map<std::string, EdgeId, std::less<>> eid;
    for (auto& e : edges) {
        if (!valid_name(e.name)) throw std::invalid_argument("bad edge name \"" + e.name + "\"");
        if (vid.count(e.name))
            throw std::invalid_argument("name \"" + e.name + "\" used for both a vertex and an edge");
        if (!eid.emplace(e.name, static_cast<EdgeId>(edge_names_.size())).second)
            throw std::invalid_argument("duplicate edge name \"" + e.name + "\"");
        auto s = vid.find(e.src);
        auto r = vid.find(e.rng);
        if (s == vid.end())
            throw std::invalid_argument("edge \"" + e.name + "\": unknown vertex \"" + e.src + "\"");
        if (r == vid.end())
            throw std::invalid_argument("edge \"" + e.name + "\": unknown vertex \"" + e.rng + "\"");
        EdgeId id = static_cast<EdgeId>(edge_names_.size());
        edge_names_.push_back(std::move(e.name));
        edge_src_.push_back(s->second);
        edge_rng_.push_back(r->second);
        out_[s->second].push_back(id);
        in_[r->second].push_back(id);
    }
}

Graph Graph::parse(std::string_view text) {
    std::vector<std::string> vertices;
    std::vector<EdgeSpec> edges;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        std::vector<std::string_view> tokens;
        std::vector<std::size_t> columns;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) {
                tokens.push_back(line.substr(start, i - start));
                columns.push_back(start + 1);
            }
        }
        if (tokens.empty()) continue;

        if (tokens[0] == "vertex") {
            if (tokens.size() != 2)
                throw ParseError("expected \"vertex <name>\"", line_no, columns[0]);
            if (!valid_name(tokens[1]))
                throw ParseError("bad vertex name \"" + std::string(tokens[1]) + "\"", line_no,
                                 columns[1]);
            vertices.emplace_back(tokens[1]);
        } else if (tokens[0] == "edge") {
            if (tokens.size() != 4)
                throw ParseError("expected \"edge <name> <source> <range>\"", line_no, columns[0]);
            for (std::size_t t = 1; t < 4; ++t) {
                if (!valid_name(tokens[t]))
                    throw ParseError("bad name \"" + std::string(tokens[t]) + "\"", line_no,
                                     columns[t]);
            }
            edges.push_back({std::string(tokens[1]), std::string(tokens[2]), std::string(tokens[3])});
        } else {
            throw ParseError("unknown directive \"" + std::string(tokens[0]) + "\"", line_no,
                             columns[0]);
        }
    }
    try {
        return Graph(std::move(vertices), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no, 1);
    }
}

Graph Graph::parse_json(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 1, 1);
    }
    try {
        std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
        std::vector<EdgeSpec> edges;
        for (const auto& e : j.value("edges", nlohmann::json::array())) {
            edges.push_back({e.at("name").get<std::string>(), e.at("src").get<std::string>(),
                             e.at("rng").get<std::string>()});
        }
        return Graph(std::move(vertices), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad graph json: ") + e.what(), 1, 1);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

Graph Graph::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open \"" + path.string() + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (path.extension() == ".json") return parse_json(buf.str());
    return parse(buf.str());
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
    for (VertexId v = 0; v < vertex_names_.size(); ++v)
        if (vertex_names_[v] == name) return v;
    return std::nullopt;
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
    for (EdgeId e = 0; e < edge_names_.size(); ++e)
        if (edge_names_[e] == name) return e;
    return std::nullopt;
}

VertexId Graph::vertex(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    throw std::invalid_argument("unknown vertex \"" + std::string(name) + "\"");
}

EdgeId Graph::edge(std::string_view name) const {
    if (auto e = find_edge(name)) return *e;
    throw std::invalid_argument("unknown edge \"" + std::string(name) + "\"");
}

std::string Graph::str() const {
    std::string out;
    for (const auto& v : vertex_names_) out += "vertex " + v + "\n";
    for (EdgeId e = 0; e < edge_names_.size(); ++e) {
        out += "edge " + edge_names_[e] + " " + vertex_names_[edge_src_[e]] + " " +
               vertex_names_[edge_rng_[e]] + "\n";
    }
    return out;
}

Path::Path(const Graph& g, VertexId v) : g_(&g), src_(v), rng_(v) {
    if (v >= g.vertex_count()) throw std::invalid_argument("vertex id out of range");
}

Path::Path(const Graph& g, std::vector<EdgeId> edges) : g_(&g), edges_(std::move(edges)) {
    if (edges_.empty()) throw std::invalid_argument("edge path must be nonempty");
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
        if (g.rng(edges_[i]) != g.src(edges_[i + 1]))
            throw std::invalid_argument("path not composable at position " + std::to_string(i + 1));
    }
    src_ = g.src(edges_.front());
    rng_ = g.rng(edges_.back());
}

Path Path::extended(EdgeId e) const {
    if (g_->src(e) != rng_) throw std::invalid_argument("edge does not extend path");
    std::vector<EdgeId> edges(edges_);
    edges.push_back(e);
    return Path(*g_, std::move(edges));
}

Path Path::parent() const {
    if (edges_.empty()) throw std::invalid_argument("vertex path has no parent");
    if (edges_.size() == 1) return Path(*g_, src_);
    return Path(*g_, std::vector<EdgeId>(edges_.begin(), edges_.end() - 1));
}

bool Path::is_prefix_of(const Path& longer) const {
    if (src_ != longer.src_ || edges_.size() > longer.edges_.size()) return false;
    return std::equal(edges_.begin(), edges_.end(), longer.edges_.begin());
}

std::vector<VertexId> Path::visited_vertices() const {
    std::vector<VertexId> vs{src_};
    for (EdgeId e : edges_) vs.push_back(g_->rng(e));
    return vs;
}

std::string Path::str() const {
    if (edges_.empty()) return g_->vertex_name(src_);
    std::string out;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (i) out += '.';
        out += g_->edge_name(edges_[i]);
    }
    return out;
}

Cycle::Cycle(Path path) : path_(std::move(path)) {
    if (path_.trivial()) throw std::invalid_argument("cycle must have length >= 1");
    if (path_.source() != path_.range()) throw std::invalid_argument("cycle must close up");
    const Graph& g = path_.graph();
    std::vector<VertexId> junctions;
    for (EdgeId e : path_.edges()) junctions.push_back(g.src(e));
    {
        std::vector<VertexId> sorted(junctions);
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("cycle is not simple");
        vertices_ = std::move(sorted);
    }
    // Canonical rotation: least junction vertex first.
    std::size_t pivot =
        std::min_element(junctions.begin(), junctions.end()) - junctions.begin();
    if (pivot != 0) {
        std::vector<EdgeId> rotated;
        auto edges = path_.edges();
        rotated.insert(rotated.end(), edges.begin() + pivot, edges.end());
        rotated.insert(rotated.end(), edges.begin(), edges.begin() + pivot);
        path_ = Path(g, std::move(rotated));
    }
}

bool Cycle::avoids(const VertexSet& set) const {
    for (VertexId v : vertices_)
        if (set.contains(v)) return false;
    return true;
}

VertexClasses vertex_classes(const Graph& g) {
    VertexClasses c;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.is_sink(v)) c.sinks.push_back(v);
        else c.regular.push_back(v);
        if (g.is_source(v)) c.sources.push_back(v);
    }
    return c;
}

std::vector<Path> enumerate_paths(const Graph& g, std::size_t max_len) {
    std::vector<Path> all;
    std::vector<Path> frontier;
    for (VertexId v = 0; v < g.vertex_count(); ++v) frontier.emplace_back(g, v);
    for (std::size_t len = 0; len <= max_len; ++len) {
        all.insert(all.end(), frontier.begin(), frontier.end());
        if (len == max_len) break;
        std::vector<Path> next;
        for (const Path& p : frontier)
            for (EdgeId e : g.out_edges(p.range())) next.push_back(p.extended(e));
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return all;
}

namespace {

// Enumerates simple cycles whose least vertex is `root` by DFS over
// vertices >= root; each rotation class is found exactly once.
void cycles_from(const Graph& g, VertexId root, std::vector<EdgeId>& stack,
                 std::vector<bool>& on_path, VertexId current, std::vector<Cycle>& out) {
    for (EdgeId e : g.out_edges(current)) {
        VertexId w = g.rng(e);
        if (w == root) {
            std::vector<EdgeId> edges(stack);
            edges.push_back(e);
            out.emplace_back(Path(g, std::move(edges)));
        } else if (w > root && !on_path[w]) {
            on_path[w] = true;
            stack.push_back(e);
            cycles_from(g, root, stack, on_path, w, out);
            stack.pop_back();
            on_path[w] = false;
        }
    }
}

}  // namespace

std::vector<Cycle> simple_cycles(const Graph& g) {
    std::vector<Cycle> out;
    std::vector<bool> on_path(g.vertex_count(), false);
    std::vector<EdgeId> stack;
    for (VertexId root = 0; root < g.vertex_count(); ++root) {
        on_path[root] = true;
        cycles_from(g, root, stack, on_path, root, out);
        on_path[root] = false;
    }
    std::stable_sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
        if (a.path().length() != b.path().length()) return a.path().length() < b.path().length();
        return a.path() < b.path();
    });
    return out;
}

std::vector<bool> reachable_bits(const Graph& g, VertexId v) {
    if (v >= g.vertex_count()) throw std::invalid_argument("vertex id out of range");
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<VertexId> queue{v};
    seen[v] = true;
    while (!queue.empty()) {
        VertexId x = queue.back();
        queue.pop_back();
        for (EdgeId e : g.out_edges(x)) {
            VertexId w = g.rng(e);
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

bool reaches(const Graph& g, VertexId v, VertexId w) {
    if (w >= g.vertex_count()) throw std::invalid_argument("vertex id out of range");
    return reachable_bits(g, v)[w];
}

VertexSet tree(const Graph& g, VertexId v) { return VertexSet(g, reachable_bits(g, v)); }

Graph fixture_graph(std::string_view name) {
    if (name == "loop") return Graph({"v"}, {{"c", "v", "v"}});
    if (name == "toeplitz") return Graph({"v", "u"}, {{"c", "v", "v"}, {"e", "v", "u"}});
    if (name == "fork") return Graph({"v", "u", "w"}, {{"e_u", "v", "u"}, {"e_w", "v", "w"}});
    if (name == "fail")
        return Graph({"v", "u", "w"}, {{"e_u", "v", "u"}, {"e_w", "v", "w"}, {"c", "v", "v"}});
    if (name == "a2") return Graph({"u", "v"}, {{"e", "u", "v"}});
    throw std::invalid_argument("unknown fixture \"" + std::string(name) + "\"");
}

std::vector<std::string> fixture_names() { return {"loop", "toeplitz", "fork", "fail", "a2"}; }

}  // namespace lpaqb
