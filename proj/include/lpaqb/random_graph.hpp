#pragma once

#include <cstdint>

#include "lpaqb/graph.hpp"

namespace lpaqb {

// splitmix64: tiny deterministic stream, identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [0, n); n must be nonzero.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::uint64_t state_;
};

// Deterministic function of (seed, parameters). Vertices are v0..v{n-1};
// for each ordered pair (i, j) in row-major order (loops included) and each
// parallel slot, one stream draw decides edge inclusion with probability
// num/den. Edges are named e0, e1, ... in inclusion order.
Graph random_graph(std::uint64_t seed, std::size_t n_vertices, std::uint64_t edge_prob_num,
                   std::uint64_t edge_prob_den, std::size_t max_parallel);

// Same stream contract but only pairs with i < j are sampled, so the result
// is acyclic by construction.
Graph random_acyclic_graph(std::uint64_t seed, std::size_t n_vertices,
                           std::uint64_t edge_prob_num, std::uint64_t edge_prob_den,
                           std::size_t max_parallel);

}  // namespace lpaqb
