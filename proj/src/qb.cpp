#include "lpaqb/qb.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lpaqb {

namespace {

void require_nonempty_hs(const VertexSet& h, const char* who) {
    require_hs(h, who);
    if (h.is_empty())
        throw std::invalid_argument(std::string(who) + ": H must be nonempty");
}

// Per-graph scratch for condition checks: the simple-cycle list and the
// reachability bits are shared across subsets and variants.
struct ConditionScratch {
    const Graph& g;
    std::vector<Cycle> cycles;
    std::vector<std::vector<bool>> reach;

    explicit ConditionScratch(const Graph& graph) : g(graph), cycles(simple_cycles(graph)) {
        for (VertexId v = 0; v < graph.vertex_count(); ++v)
            reach.push_back(reachable_bits(graph, v));
    }

    bool cycle_reaches(const Cycle& c, const VertexSet& target) const {
        // Cycle vertices sit outside the target, so any reach is via a path
        // of length >= 1; the reflexive case cannot fire.
        for (VertexId v : c.vertices())
            for (VertexId w : target.members())
                if (reach[v][w]) return true;
        return false;
    }

    bool no_cycle_leads_to(const VertexSet& target) const {
        for (const Cycle& c : cycles) {
            if (!c.avoids(target)) continue;
            if (cycle_reaches(c, target)) return false;
        }
        return true;
    }

    bool check(const VertexSet& h, const VertexSet& htc, ConditionVariant variant) const {
        switch (variant) {
            case ConditionVariant::Cond2:
                return no_cycle_leads_to(h) || no_cycle_leads_to(htc);
            case ConditionVariant::Cond2Prime: {
                VertexSet forbidden = h.unite(htc);
                for (const Cycle& c : cycles) {
                    if (!c.avoids(forbidden)) continue;
                    if (cycle_reaches(c, h) && cycle_reaches(c, htc)) return false;
                }
                return true;
            }
            case ConditionVariant::Cond3: {
                VertexSet htctc = tc_complement(g, htc);
                return saturated_closure(g, htc.unite(htctc)) == VertexSet::universe(g);
            }
            case ConditionVariant::Cond3Prime: {
                VertexSet htctc = tc_complement(g, htc);
                return hs_join(g, htc, htctc) == VertexSet::universe(g);
            }
        }
        throw std::logic_error("unreachable");
    }
};

}  // namespace

bool condition_check(const Graph& g, const VertexSet& h, ConditionVariant variant) {
    require_nonempty_hs(h, "condition_check");
    return ConditionScratch(g).check(h, tc_complement(g, h), variant);
}

namespace {

QbWitness make_witness(const Graph& g, const VertexSet& h, const VertexSet& htc,
                       const FeResult& fe_htc) {
    // The cycle witnessing F_E(Htc) infinite avoids Htc and leads to it; it
    // also avoids H (a cycle vertex in hereditary H would drag Htc into H),
    // and every vertex outside Htc reaches H by definition of Htc.
    const Cycle& cycle = fe_htc.witness().cycle;
    if (!cycle.avoids(h)) throw std::logic_error("witness cycle meets H");
    std::optional<Path> to_h;
    for (VertexId v : cycle.vertices()) {
        to_h = first_entry_path(g, v, h);
        if (to_h) break;
    }
    if (!to_h) throw std::logic_error("witness cycle does not reach H");
    return QbWitness{cycle, std::move(*to_h), fe_htc.witness().entry};
}

}  // namespace

AnnihilatorResult annihilator_projection(const LpaContextPtr& ctx, const VertexSet& h) {
    const Graph& g = ctx->graph();
    require_nonempty_hs(h, "annihilator_projection");
    FeResult fe_h = fe_paths(g, h);
    VertexSet htc = tc_complement(g, h);
    FeResult fe_htc = fe_paths(g, htc);
    if (fe_h.is_finite()) {
        // Compact-U branch: the annihilator is generated by 1 - p_H, and the
        // clopen partition makes that equal to p_Htc; assert rather than
        // assume the identity.
        LpaElement p_h = projection_p(ctx, h, fe_h);
        if (!fe_htc.is_finite())
            throw std::logic_error("F_E(Htc) must be finite when F_E(H) is");
        LpaElement p_htc = projection_p(ctx, htc, fe_htc);
        if (!(LpaElement::one(ctx) - p_h == p_htc))
            throw std::logic_error("clopen partition identity 1 - p_H = p_Htc failed");
        return p_htc;
    }
    if (fe_htc.is_finite()) return projection_p(ctx, htc, fe_htc);
    return make_witness(g, h, htc, fe_htc);
}

QbReport decide_graded_qb_star(const Graph& g, const Field& field, std::string graph_name) {
    LpaContextPtr ctx = LpaContext::make(g, field);
    ConditionScratch scratch(g);
    QbReport report;
    report.graph_name = std::move(graph_name);
    report.verdict = true;
    for (const VertexSet& h : enumerate_hs(g)) {
        if (h.is_empty()) continue;  // the characterization quantifies over nonempty H
        VertexSet htc = tc_complement(g, h);
        QbRow row{h,
                  htc,
                  fe_paths(g, h).is_finite(),
                  fe_paths(g, htc).is_finite(),
                  scratch.check(h, htc, ConditionVariant::Cond2),
                  scratch.check(h, htc, ConditionVariant::Cond2Prime),
                  scratch.check(h, htc, ConditionVariant::Cond3),
                  scratch.check(h, htc, ConditionVariant::Cond3Prime),
                  false,
                  std::nullopt,
                  std::nullopt};
        row.passes = row.fe_h_finite || row.fe_htc_finite;
        AnnihilatorResult ann = annihilator_projection(ctx, h);
        if (std::holds_alternative<LpaElement>(ann)) {
            row.projection = std::get<LpaElement>(std::move(ann));
        } else {
            row.witness = std::get<QbWitness>(std::move(ann));
        }
        if (!row.passes) report.verdict = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

nlohmann::ordered_json row_json(const QbRow& row) {
    nlohmann::ordered_json j;
    j["H"] = row.h.str();
    j["Htc"] = row.htc.str();
    j["feH"] = row.fe_h_finite ? "finite" : "infinite";
    j["feHtc"] = row.fe_htc_finite ? "finite" : "infinite";
    j["cond2"] = row.cond2;
    j["cond2p"] = row.cond2p;
    j["cond3"] = row.cond3;
    j["cond3p"] = row.cond3p;
    if (row.projection)
        j["projection"] = row.projection->str();
    else
        j["projection"] = nullptr;
    if (row.witness) {
        nlohmann::ordered_json w;
        w["cycle"] = row.witness->cycle.str();
        w["to_H"] = row.witness->to_h.str();
        w["to_Htc"] = row.witness->to_htc.str();
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

}  // namespace

std::string QbReport::to_json_string() const {
    nlohmann::ordered_json j;
    j["graph"] = graph_name;
    j["verdict"] = verdict;
    auto rows_json = nlohmann::ordered_json::array();
    for (const QbRow& row : rows) rows_json.push_back(row_json(row));
    j["rows"] = rows_json;
    return j.dump(2);
}

std::string QbReport::to_text() const {
    std::ostringstream out;
    out << "graph " << graph_name << ": graded quasi-Baer * = " << (verdict ? "true" : "false")
        << "\n";
    for (const QbRow& row : rows) {
        out << "  H={" << row.h.str() << "} Htc={" << row.htc.str() << "}"
            << " feH=" << (row.fe_h_finite ? "finite" : "infinite")
            << " feHtc=" << (row.fe_htc_finite ? "finite" : "infinite") << " cond2=" << row.cond2
            << " cond2'=" << row.cond2p << " cond3=" << row.cond3 << " cond3'=" << row.cond3p;
        if (row.projection) out << " projection=" << row.projection->str();
        if (row.witness)
            out << " witness(cycle=" << row.witness->cycle.str()
                << ", to_H=" << row.witness->to_h.str()
                << ", to_Htc=" << row.witness->to_htc.str() << ")";
        out << "\n";
    }
    return out.str();
}

EquivalenceTable cross_check_equivalence(const Graph& g) {
    ConditionScratch scratch(g);
    EquivalenceTable table;
    table.agreement = true;
    for (const VertexSet& h : enumerate_hs(g)) {
        if (h.is_empty()) continue;
        VertexSet htc = tc_complement(g, h);
        EquivalenceRow row{h,
                           fe_paths(g, h).is_finite() || fe_paths(g, htc).is_finite(),
                           scratch.check(h, htc, ConditionVariant::Cond2),
                           scratch.check(h, htc, ConditionVariant::Cond2Prime),
                           scratch.check(h, htc, ConditionVariant::Cond3),
                           scratch.check(h, htc, ConditionVariant::Cond3Prime),
                           true};
        row.consistent = row.cond2 == row.compact_form && row.cond2p == row.compact_form &&
                         row.cond3 == row.compact_form && row.cond3p == row.compact_form;
        if (!row.consistent) table.agreement = false;
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string EquivalenceTable::to_json_string() const {
    nlohmann::ordered_json j;
    j["agreement"] = agreement;
    auto rows_json = nlohmann::ordered_json::array();
    for (const EquivalenceRow& row : rows) {
        nlohmann::ordered_json r;
        r["H"] = row.h.str();
        r["compact_form"] = row.compact_form;
        r["cond2"] = row.cond2;
        r["cond2p"] = row.cond2p;
        r["cond3"] = row.cond3;
        r["cond3p"] = row.cond3p;
        r["consistent"] = row.consistent;
        rows_json.push_back(r);
    }
    j["rows"] = rows_json;
    return j.dump(2);
}

std::string EquivalenceTable::to_text() const {
    std::ostringstream out;
    out << "equivalence agreement: " << (agreement ? "true" : "false") << "\n";
    for (const EquivalenceRow& row : rows) {
        out << "  H={" << row.h.str() << "} compact=" << row.compact_form << " cond2=" << row.cond2
            << " cond2'=" << row.cond2p << " cond3=" << row.cond3 << " cond3'=" << row.cond3p
            << (row.consistent ? "" : "  <-- disagreement") << "\n";
    }
    return out.str();
}

}  // namespace lpaqb
