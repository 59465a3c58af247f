#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lpaqb/lpa.hpp"
#include "lpaqb/random_graph.hpp"

namespace lpaqb {

struct SelftestConfig {
    std::uint64_t seed = 1;
    int law_samples = 100;       // algebra-law samples per fixture
    int raw_sums = 50;           // scrambled-rewriting comparisons per fixture
    int random_graphs = 50;      // random graphs per randomized sweep
    int acyclic_graphs = 25;     // acyclic annihilator cross-checks
    int probes = 100;            // properness probes per (field, graph)
    int exhaustive_max_vertices = 3;     // equivalence-sweep corpus bound
    int fe_exhaustive_max_vertices = 4;  // fe-oracle / hs-filter corpus bound
    bool inject_fault = false;   // test-only hook: corrupts one relation check
};

struct CheckResult {
    std::string module;
    std::string name;
    bool passed;
    std::string detail;  // failure description, or a skip/stat note
};

struct SelftestReport {
    std::vector<CheckResult> checks;
    bool all_passed = true;
    bool vacuous = false;  // every randomized count was zero

    std::string to_json_string() const;
    std::string to_text() const;
};

/// Runs the invariant batteries of every library module.
SelftestReport run_selftest(const SelftestConfig& cfg);

/// Enumerates every graph with 1..max_vertices vertices and at most one
/// edge per ordered vertex pair (loops included).
void for_each_small_graph(std::size_t max_vertices,
                          const std::function<void(const Graph&)>& fn);

// Independent reference implementations kept deliberately separate from the
// main code paths they validate.
namespace oracles {

/// 2^n subset filter against the raw predicates.
std::vector<VertexSet> enumerate_hs_by_filter(const Graph& g);

/// Bounded-enumeration pigeonhole decision for F_E(H): candidates are
/// listed up to length |vertices|+1 and infiniteness is witnessed exactly
/// by a candidate of length |vertices|+1.
struct FeOracle {
    bool finite;
    std::vector<Path> members;  // the candidates of length <= |vertices|, sorted
};
FeOracle fe_paths_bounded(const Graph& g, const VertexSet& h);

/// CK2 rewriting applied in a randomized order, reimplemented from the
/// relation itself; used to observe order-independence of normal forms.
LpaElement scrambled_normal_form(const LpaContextPtr& ctx, std::vector<PathMonomial> raw,
                                 std::uint64_t seed);

/// Acyclic-case annihilator theorem check: the exact-nullspace right
/// annihilator of the ideal generated by H must coincide, as a subspace,
/// with the span of p_Htc times the matrix-unit monomials. Returns a
/// failure description or nullopt.
std::optional<std::string> annihilator_matches_projection(const Graph& g,
                                                          const LpaContextPtr& ctx,
                                                          const VertexSet& h);

/// A random raw monomial sum (paths up to length |vertices|+2, small
/// coefficients, reducible suffixes encouraged).
std::vector<PathMonomial> random_raw_sum(const LpaContextPtr& ctx, SplitMix64& rng,
                                         std::size_t max_terms);

LpaElement random_element(const LpaContextPtr& ctx, SplitMix64& rng);

}  // namespace oracles

}  // namespace lpaqb
