#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lpaqb/lpa.hpp"

namespace lpaqb {

// The graph conditions of the main characterization, one checker per listed
// variant. 3 and 3' share the same computation and are kept as two entry
// points to mirror the report schema.
enum class ConditionVariant { Cond2, Cond2Prime, Cond3, Cond3Prime };

/// Requires H nonempty, hereditary, saturated.
bool condition_check(const Graph& g, const VertexSet& h, ConditionVariant variant);

// Failure witness: a cycle outside H and H^tc together with first-entry
// paths from the cycle into each side.
struct QbWitness {
    Cycle cycle;
    Path to_h;
    Path to_htc;
};

using AnnihilatorResult = std::variant<LpaElement, QbWitness>;

/// The annihilator projection of the graded ideal generated by H, or the
/// failure witness when neither F_E(H) nor F_E(H^tc) is finite.
AnnihilatorResult annihilator_projection(const LpaContextPtr& ctx, const VertexSet& h);

struct QbRow {
    VertexSet h;
    VertexSet htc;
    bool fe_h_finite;
    bool fe_htc_finite;
    bool cond2, cond2p, cond3, cond3p;
    bool passes;  // the compactness form: fe_h_finite or fe_htc_finite
    std::optional<LpaElement> projection;
    std::optional<QbWitness> witness;
};

struct QbReport {
    std::string graph_name;
    bool verdict;
    std::vector<QbRow> rows;

    std::string to_json_string() const;
    std::string to_text() const;
};

/// Decides whether the algebra of g is a graded quasi-Baer *-ring over the
/// given field, with per-H projections or witnesses.
QbReport decide_graded_qb_star(const Graph& g, const Field& field = Field::rationals(),
                               std::string graph_name = "graph");

struct EquivalenceRow {
    VertexSet h;
    bool compact_form;
    bool cond2, cond2p, cond3, cond3p;
    bool consistent;  // all five agree
};

struct EquivalenceTable {
    std::vector<EquivalenceRow> rows;
    bool agreement;  // every row consistent

    std::string to_json_string() const;
    std::string to_text() const;
};

/// Evaluates every condition variant and the compactness form on every
/// nonempty hereditary saturated subset and checks they coincide.
EquivalenceTable cross_check_equivalence(const Graph& g);

}  // namespace lpaqb
