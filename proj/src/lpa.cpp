#include "lpaqb/lpa.hpp"

#include <algorithm>
#include <stdexcept>

#include "lpaqb/random_graph.hpp"

namespace lpaqb {

LpaContext::LpaContext(const Graph& g, Field field, std::vector<EdgeId> special)
    : g_(&g), field_(std::move(field)), special_(std::move(special)) {}

LpaContextPtr LpaContext::make(const Graph& g, Field field) {
    std::vector<EdgeId> special(g.vertex_count(), kNone);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.is_regular(v)) special[v] = g.out_edges(v).front();
    return LpaContextPtr(new LpaContext(g, std::move(field), std::move(special)));
}

LpaContextPtr LpaContext::make(const Graph& g, Field field, std::vector<EdgeId> special_edges) {
    if (special_edges.size() != g.vertex_count())
        throw std::invalid_argument("special edge choice must cover every vertex slot");
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.is_regular(v)) {
            EdgeId e = special_edges[v];
            if (e >= g.edge_count() || g.src(e) != v)
                throw std::invalid_argument("special edge of a regular vertex must leave it");
        } else {
            special_edges[v] = kNone;
        }
    }
    return LpaContextPtr(new LpaContext(g, std::move(field), std::move(special_edges)));
}

EdgeId LpaContext::special_edge(VertexId regular) const {
    EdgeId e = special_.at(regular);
    if (e == kNone) throw std::invalid_argument("sink has no special edge");
    return e;
}

bool LpaContext::same_context(const LpaContext& other) const {
    return g_ == other.g_ && field_ == other.field_ && special_ == other.special_;
}

namespace {

using MonKey = std::pair<Path, Path>;
using MonMap = std::map<MonKey, Scalar>;

void check_monomial(const LpaContext& ctx, const PathMonomial& m) {
    if (&m.alpha.graph() != &ctx.graph() || &m.beta.graph() != &ctx.graph())
        throw std::invalid_argument("monomial paths belong to a different graph");
    if (!(m.coeff.field() == ctx.field()))
        throw std::invalid_argument("monomial coefficient from a different field");
    if (m.alpha.range() != m.beta.range())
        throw std::invalid_argument("malformed monomial: range mismatch between alpha and beta");
}

bool reducible(const LpaContext& ctx, const Path& a, const Path& b) {
    return !a.trivial() && !b.trivial() && a.last_edge() == b.last_edge() &&
           ctx.is_special(a.last_edge());
}

void accumulate(MonMap& acc, Path a, Path b, Scalar k) {
    auto [it, inserted] = acc.try_emplace(MonKey(std::move(a), std::move(b)), k);
    if (!inserted) it->second += std::move(k);
}

// CK2 rewrite: a'g (b'g)^* -> a'b'^* - sum over the other edges e out of
// s(g) of (a'e)(b'e)^*, applied until the leading term is irreducible. The
// summed terms end with a non-special edge and never reduce again.
void add_reduced(MonMap& acc, const LpaContext& ctx, Path a, Path b, Scalar k) {
    const Graph& g = ctx.graph();
    while (reducible(ctx, a, b)) {
        EdgeId special = a.last_edge();
        VertexId v = g.src(special);
        a = a.parent();
        b = b.parent();
        for (EdgeId e : g.out_edges(v)) {
            if (e != special) accumulate(acc, a.extended(e), b.extended(e), -k);
        }
    }
    accumulate(acc, std::move(a), std::move(b), std::move(k));
}

std::vector<PathMonomial> finish(MonMap&& acc) {
    std::vector<PathMonomial> out;
    for (auto& [key, coeff] : acc) {
        if (!coeff.is_zero())
            out.push_back(PathMonomial{std::move(coeff), key.first, key.second});
    }
    return out;
}

Path append(const Path& base, std::span<const EdgeId> suffix) {
    Path p = base;
    for (EdgeId e : suffix) p = p.extended(e);
    return p;
}

}  // namespace

LpaElement::LpaElement(LpaContextPtr ctx, std::vector<PathMonomial> normal)
    : ctx_(std::move(ctx)), mons_(std::move(normal)) {}

LpaElement LpaElement::zero(LpaContextPtr ctx) { return LpaElement(std::move(ctx), {}); }

LpaElement LpaElement::one(LpaContextPtr ctx) {
    std::vector<PathMonomial> raw;
    const Graph& g = ctx->graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        raw.push_back({ctx->field().one(), Path(g, v), Path(g, v)});
    return from_monomials(std::move(ctx), raw);
}

LpaElement LpaElement::vertex(LpaContextPtr ctx, VertexId v) {
    Path p(ctx->graph(), v);
    Scalar one = ctx->field().one();
    return monomial(std::move(ctx), std::move(one), p, p);
}

LpaElement LpaElement::edge(LpaContextPtr ctx, EdgeId e) {
    const Graph& g = ctx->graph();
    Path alpha(g, std::vector<EdgeId>{e});
    Path beta(g, g.rng(e));
    Scalar one = ctx->field().one();
    return monomial(std::move(ctx), std::move(one), std::move(alpha), std::move(beta));
}

LpaElement LpaElement::ghost_edge(LpaContextPtr ctx, EdgeId e) {
    const Graph& g = ctx->graph();
    Path alpha(g, g.rng(e));
    Path beta(g, std::vector<EdgeId>{e});
    Scalar one = ctx->field().one();
    return monomial(std::move(ctx), std::move(one), std::move(alpha), std::move(beta));
}

LpaElement LpaElement::monomial(LpaContextPtr ctx, Scalar coeff, Path alpha, Path beta) {
    PathMonomial m{std::move(coeff), std::move(alpha), std::move(beta)};
    return from_monomials(std::move(ctx), std::span<const PathMonomial>(&m, 1));
}

LpaElement LpaElement::from_monomials(LpaContextPtr ctx, std::span<const PathMonomial> raw) {
    MonMap acc;
    for (const PathMonomial& m : raw) {
        check_monomial(*ctx, m);
        if (m.coeff.is_zero()) continue;
        add_reduced(acc, *ctx, m.alpha, m.beta, m.coeff);
    }
    return LpaElement(std::move(ctx), finish(std::move(acc)));
}

namespace {

void require_same_context(const LpaElement& a, const LpaElement& b) {
    if (!a.context()->same_context(*b.context()))
        throw std::invalid_argument("operands built against different contexts");
}

}  // namespace

LpaElement LpaElement::operator+(const LpaElement& rhs) const {
    require_same_context(*this, rhs);
    // Sums of normal forms stay irreducible; only like terms collapse.
    MonMap acc;
    for (const auto& m : mons_) acc.emplace(MonKey(m.alpha, m.beta), m.coeff);
    for (const auto& m : rhs.mons_) accumulate(acc, m.alpha, m.beta, m.coeff);
    return LpaElement(ctx_, finish(std::move(acc)));
}

LpaElement LpaElement::operator-(const LpaElement& rhs) const { return *this + (-rhs); }

LpaElement LpaElement::operator-() const {
    std::vector<PathMonomial> mons(mons_);
    for (auto& m : mons) m.coeff = -m.coeff;
    return LpaElement(ctx_, std::move(mons));
}

LpaElement LpaElement::scaled(const Scalar& k) const {
    if (!(k.field() == ctx_->field()))
        throw std::invalid_argument("scalar from a different field");
    if (k.is_zero()) return zero(ctx_);
    std::vector<PathMonomial> mons(mons_);
    for (auto& m : mons) m.coeff *= k;
    return LpaElement(ctx_, std::move(mons));
}

LpaElement LpaElement::operator*(const LpaElement& rhs) const {
    require_same_context(*this, rhs);
    MonMap acc;
    for (const auto& x : mons_) {
        for (const auto& y : rhs.mons_) {
            // (a b^*)(c d^*): CK1 collapses b^* c to the leftover of whichever
            // of b, c extends the other; disjoint pairs vanish.
            const Path& b = x.beta;
            const Path& c = y.alpha;
            if (b.is_prefix_of(c)) {
                Path alpha = append(x.alpha, c.edges().subspan(b.length()));
                add_reduced(acc, *ctx_, std::move(alpha), y.beta, x.coeff * y.coeff);
            } else if (c.is_prefix_of(b)) {
                Path beta = append(y.beta, b.edges().subspan(c.length()));
                add_reduced(acc, *ctx_, x.alpha, std::move(beta), x.coeff * y.coeff);
            }
        }
    }
    return LpaElement(ctx_, finish(std::move(acc)));
}

bool operator==(const LpaElement& a, const LpaElement& b) {
    if (!a.ctx_->same_context(*b.ctx_)) return false;
    if (a.mons_.size() != b.mons_.size()) return false;
    for (std::size_t i = 0; i < a.mons_.size(); ++i) {
        if (a.mons_[i].alpha != b.mons_[i].alpha || a.mons_[i].beta != b.mons_[i].beta ||
            a.mons_[i].coeff != b.mons_[i].coeff)
            return false;
    }
    return true;
}

std::string LpaElement::str() const {
    if (mons_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < mons_.size(); ++i) {
        if (i) out += " + ";
        const PathMonomial& m = mons_[i];
        out += m.coeff.str();
        out += '*';
        const Graph& g = ctx_->graph();
        if (m.alpha.trivial() && m.beta.trivial()) {
            out += g.vertex_name(m.alpha.source());
        } else {
            bool first = true;
            for (EdgeId e : m.alpha.edges()) {
                if (!first) out += '.';
                out += g.edge_name(e);
                first = false;
            }
            for (EdgeId e : m.beta.edges()) {
                if (!first) out += '.';
                out += g.edge_name(e);
                out += '^';
                first = false;
            }
        }
    }
    return out;
}

LpaElement LpaElement::parse(LpaContextPtr ctx, std::string_view text) {
    const Graph& g = ctx->graph();
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s == "0") return zero(std::move(ctx));

    std::vector<PathMonomial> raw;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t sep = s.find(" + ", pos);
        std::string_view term =
            s.substr(pos, sep == std::string_view::npos ? std::string_view::npos : sep - pos);
        pos = sep == std::string_view::npos ? s.size() + 1 : sep + 3;

        std::size_t star = term.find('*');
        if (star == std::string_view::npos)
            throw std::invalid_argument("term \"" + std::string(term) + "\" lacks a coefficient");
        Scalar coeff = ctx->field().parse_scalar(term.substr(0, star));
        std::string_view spec = term.substr(star + 1);
        if (spec.empty()) throw std::invalid_argument("empty path spec");

        std::vector<std::string_view> alpha_tokens, beta_tokens;
        std::size_t tpos = 0;
        while (tpos <= spec.size()) {
            std::size_t dot = spec.find('.', tpos);
            std::string_view token = spec.substr(
                tpos, dot == std::string_view::npos ? std::string_view::npos : dot - tpos);
            tpos = dot == std::string_view::npos ? spec.size() + 1 : dot + 1;
            if (token.empty()) throw std::invalid_argument("empty path token");
            if (token.back() == '^') {
                token.remove_suffix(1);
                beta_tokens.push_back(token);
            } else {
                if (!beta_tokens.empty())
                    throw std::invalid_argument("plain token after starred token in \"" +
                                                std::string(term) + "\"");
                alpha_tokens.push_back(token);
            }
        }

        auto to_path = [&](const std::vector<std::string_view>& tokens) -> std::optional<Path> {
            if (tokens.empty()) return std::nullopt;
            if (tokens.size() == 1) {
                if (auto v = g.find_vertex(tokens[0])) return Path(g, *v);
            }
            std::vector<EdgeId> edges;
            for (auto t : tokens) edges.push_back(g.edge(t));
            return Path(g, std::move(edges));
        };
        std::optional<Path> alpha = to_path(alpha_tokens);
        std::optional<Path> beta = to_path(beta_tokens);
        if (!alpha && !beta) throw std::invalid_argument("empty monomial path spec");
        if (!alpha) alpha = Path(g, beta->range());
        if (!beta) beta = Path(g, alpha->range());
        raw.push_back({std::move(coeff), std::move(*alpha), std::move(*beta)});
    }
    return from_monomials(std::move(ctx), raw);
}

LpaElement involute(const LpaElement& x) {
    std::vector<PathMonomial> raw;
    for (const auto& m : x.monomials()) raw.push_back({m.coeff.conj(), m.beta, m.alpha});
    return LpaElement::from_monomials(x.context(), raw);
}

std::map<long, LpaElement> homogeneous_components(const LpaElement& x) {
    std::map<long, std::vector<PathMonomial>> groups;
    for (const auto& m : x.monomials()) groups[m.degree()].push_back(m);
    std::map<long, LpaElement> out;
    for (auto& [deg, mons] : groups)
        out.emplace(deg, LpaElement::from_monomials(x.context(), mons));
    return out;
}

bool is_homogeneous(const LpaElement& x) { return homogeneous_components(x).size() <= 1; }

LpaElement projection_p(const LpaContextPtr& ctx, const VertexSet& h, const FeResult& fe) {
    if (&h.graph() != &ctx->graph())
        throw std::invalid_argument("subset belongs to a different graph");
    require_hs(h, "projection_p");
    if (!fe.is_finite())
        throw std::invalid_argument("projection_p: F_E(H) is infinite, no projection exists");
    const Graph& g = ctx->graph();
    std::vector<PathMonomial> raw;
    for (VertexId v : h.members()) {
        Path p(g, v);
        raw.push_back({ctx->field().one(), p, p});
    }
    for (const Path& alpha : fe.paths()) {
        if (!h.contains(alpha.range()))
            throw std::invalid_argument("projection_p: fe result does not match H");
        raw.push_back({ctx->field().one(), alpha, alpha});
    }
    return LpaElement::from_monomials(ctx, raw);
}

ProjectionCheck check_projection_central(const LpaElement& x) {
    ProjectionCheck r{};
    r.is_projection = (x * x == x) && (involute(x) == x);
    const auto& ctx = x.context();
    const Graph& g = ctx->graph();
    r.is_central = true;
    for (VertexId v = 0; v < g.vertex_count() && r.is_central; ++v) {
        LpaElement gen = LpaElement::vertex(ctx, v);
        if (!(x * gen == gen * x)) r.is_central = false;
    }
    for (EdgeId e = 0; e < g.edge_count() && r.is_central; ++e) {
        LpaElement gen = LpaElement::edge(ctx, e);
        LpaElement ghost = LpaElement::ghost_edge(ctx, e);
        if (!(x * gen == gen * x) || !(x * ghost == ghost * x)) r.is_central = false;
    }
    auto comps = homogeneous_components(x);
    r.is_homogeneous_deg0 = comps.empty() || (comps.size() == 1 && comps.begin()->first == 0);
    return r;
}

ProbeResult properness_probe(const Graph& g, const Field& field, long degree,
                             std::uint64_t seed) {
    LpaContextPtr ctx = LpaContext::make(g, field);
    const std::size_t bound = g.vertex_count() + 2;

    // Index paths by (range, length) so a degree-d monomial is two draws
    // from the same range bucket.
    std::map<std::pair<VertexId, std::size_t>, std::vector<Path>> buckets;
    for (Path& p : enumerate_paths(g, bound))
        buckets[{p.range(), p.length()}].push_back(std::move(p));
    std::vector<std::pair<const std::vector<Path>*, const std::vector<Path>*>> combos;
    for (auto& [key, alphas] : buckets) {
        long beta_len = static_cast<long>(key.second) - degree;
        if (beta_len < 0 || beta_len > static_cast<long>(bound)) continue;
        auto it = buckets.find({key.first, static_cast<std::size_t>(beta_len)});
        if (it != buckets.end()) combos.emplace_back(&alphas, &it->second);
    }
    if (combos.empty())
        throw std::invalid_argument("no homogeneous element of degree " + std::to_string(degree) +
                                    " exists within path length " + std::to_string(bound));

    SplitMix64 rng(seed);
    auto random_coeff = [&]() -> Scalar {
        switch (field.kind()) {
            case Field::Kind::Prime: {
                unsigned long p = field.characteristic();
                return field.integer(static_cast<long>(1 + rng.below(p - 1)));
            }
            case Field::Kind::Rationals:
                return field.rational((rng.below(2) ? 1 : -1) * static_cast<long>(1 + rng.below(5)),
                                      static_cast<long>(1 + rng.below(3)));
            case Field::Kind::GaussianRationals: {
                long re = static_cast<long>(rng.below(5)) - 2;
                long im = static_cast<long>(rng.below(5)) - 2;
                if (re == 0 && im == 0) re = 1;
                return field.gaussian(re, static_cast<long>(1 + rng.below(2)), im, 1);
            }
        }
        throw std::logic_error("unreachable");
    };

    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<PathMonomial> raw;
        std::size_t terms = 1 + rng.below(3);
        for (std::size_t t = 0; t < terms; ++t) {
            const auto& [alphas, betas] = combos[rng.below(combos.size())];
            raw.push_back({random_coeff(), (*alphas)[rng.below(alphas->size())],
                           (*betas)[rng.below(betas->size())]});
        }
        LpaElement x = LpaElement::from_monomials(ctx, raw);
        if (x.is_zero()) continue;  // cancellation; redraw
        LpaElement xxs = x * involute(x);
        bool nonzero = !xxs.is_zero();
        return ProbeResult{std::move(x), std::move(xxs), nonzero};
    }
    throw std::logic_error("properness probe failed to draw a nonzero element");
}

}  // namespace lpaqb
