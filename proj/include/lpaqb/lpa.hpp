#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lpaqb/graph.hpp"
#include "lpaqb/hs_lattice.hpp"
#include "lpaqb/scalar.hpp"

namespace lpaqb {

class LpaContext;
using LpaContextPtr = std::shared_ptr<const LpaContext>;

// The (graph, field, special-edge choice) record every element is built
// against. The special edge of a regular vertex is the pivot of the CK2
// rewrite that defines the normal form; by default it is the first
// out-edge in declaration order.
class LpaContext {
public:
    static LpaContextPtr make(const Graph& g, Field field);
    static LpaContextPtr make(const Graph& g, Field field, std::vector<EdgeId> special_edges);

    const Graph& graph() const { return *g_; }
    const Field& field() const { return field_; }

    EdgeId special_edge(VertexId regular) const;
    bool is_special(EdgeId e) const { return special_[g_->src(e)] == e; }

    bool same_context(const LpaContext& other) const;

private:
    LpaContext(const Graph& g, Field field, std::vector<EdgeId> special);
    const Graph* g_;
    Field field_;
    std::vector<EdgeId> special_;  // per vertex; kNone for sinks
    static constexpr EdgeId kNone = static_cast<EdgeId>(-1);
};

// One term k * alpha beta^*; the range condition r(alpha) = r(beta) is
// enforced when the term enters an element.
struct PathMonomial {
    Scalar coeff;
    Path alpha;
    Path beta;

    long degree() const {
        return static_cast<long>(alpha.length()) - static_cast<long>(beta.length());
    }
};

// An element of the Leavitt path algebra, kept in CK2 rewriting normal
// form: no monomial has alpha and beta both ending with the special edge
// of the same regular vertex, coefficients are nonzero, and monomials are
// sorted by (alpha, beta). Immutable.
class LpaElement {
public:
    static LpaElement zero(LpaContextPtr ctx);
    static LpaElement one(LpaContextPtr ctx);  // sum of all vertices
    static LpaElement vertex(LpaContextPtr ctx, VertexId v);
    static LpaElement edge(LpaContextPtr ctx, EdgeId e);
    static LpaElement ghost_edge(LpaContextPtr ctx, EdgeId e);
    static LpaElement monomial(LpaContextPtr ctx, Scalar coeff, Path alpha, Path beta);
    /// Normal form of an arbitrary raw monomial sum.
    static LpaElement from_monomials(LpaContextPtr ctx, std::span<const PathMonomial> raw);

    const LpaContextPtr& context() const { return ctx_; }
    bool is_zero() const { return mons_.empty(); }
    std::span<const PathMonomial> monomials() const { return mons_; }

    LpaElement operator+(const LpaElement& rhs) const;
    LpaElement operator-(const LpaElement& rhs) const;
    LpaElement operator-() const;
    LpaElement operator*(const LpaElement& rhs) const;
    LpaElement scaled(const Scalar& k) const;

    friend bool operator==(const LpaElement& a, const LpaElement& b);
    friend bool operator!=(const LpaElement& a, const LpaElement& b) { return !(a == b); }

    /// "k1*a1.b1^ + ..." with '^' on each starred token; zero prints "0".
    std::string str() const;
    static LpaElement parse(LpaContextPtr ctx, std::string_view text);

private:
    LpaElement(LpaContextPtr ctx, std::vector<PathMonomial> normal);
    LpaContextPtr ctx_;
    std::vector<PathMonomial> mons_;
};

LpaElement involute(const LpaElement& x);

/// Partition of the monomials by degree |alpha| - |beta|; zero components
/// are absent.
std::map<long, LpaElement> homogeneous_components(const LpaElement& x);
bool is_homogeneous(const LpaElement& x);

/// p_H = sum of v for v in H plus alpha alpha^* for alpha in F_E(H),
/// normalized. fe must be the finite fe_paths result for H.
LpaElement projection_p(const LpaContextPtr& ctx, const VertexSet& h, const FeResult& fe);

struct ProjectionCheck {
    bool is_projection;
    bool is_central;
    bool is_homogeneous_deg0;
    bool all() const { return is_projection && is_central && is_homogeneous_deg0; }
};

ProjectionCheck check_projection_central(const LpaElement& x);

struct ProbeResult {
    LpaElement x;
    LpaElement xx_star;
    bool nonzero;
};

/// Draws a pseudorandom nonzero homogeneous element of the given degree
/// (path length bounded by |vertices| + 2) and tests x x^* != 0.
ProbeResult properness_probe(const Graph& g, const Field& field, long degree,
                             std::uint64_t seed);

}  // namespace lpaqb
