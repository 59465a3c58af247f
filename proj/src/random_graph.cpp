#include "lpaqb/random_graph.hpp"

#include <stdexcept>

namespace lpaqb {

namespace {

Graph generate(std::uint64_t seed, std::size_t n, std::uint64_t num, std::uint64_t den,
               std::size_t max_parallel, bool upper_only) {
    if (n == 0) throw std::invalid_argument("need at least one vertex");
    if (den == 0) throw std::invalid_argument("zero probability denominator");
    SplitMix64 rng(seed);
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = upper_only ? i + 1 : 0; j < n; ++j) {
            for (std::size_t k = 0; k < max_parallel; ++k) {
                if (rng.chance(num, den))
                    edges.push_back({"e" + std::to_string(edges.size()), vertices[i], vertices[j]});
            }
        }
    }
    return Graph(std::move(vertices), std::move(edges));
}

}  // namespace

Graph random_graph(std::uint64_t seed, std::size_t n_vertices, std::uint64_t edge_prob_num,
                   std::uint64_t edge_prob_den, std::size_t max_parallel) {
    return generate(seed, n_vertices, edge_prob_num, edge_prob_den, max_parallel, false);
}

Graph random_acyclic_graph(std::uint64_t seed, std::size_t n_vertices,
                           std::uint64_t edge_prob_num, std::uint64_t edge_prob_den,
                           std::size_t max_parallel) {
    return generate(seed, n_vertices, edge_prob_num, edge_prob_den, max_parallel, true);
}

}  // namespace lpaqb
