#pragma once

// Seeded random signed graphs. Uniform variates are built from raw 64-bit engine output so
// sequences are identical across standard library implementations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "signet/signed_graph.hpp"

namespace signet {

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Each pair is an edge with probability p_edge; each edge is negative with probability p_negative.
inline SignedGraph random_signed_graph(std::size_t n, double p_edge, double p_negative, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SignedEdge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (unit_uniform(rng) >= p_edge) continue;
            const Sign s = unit_uniform(rng) < p_negative ? Sign::negative : Sign::positive;
            edges.push_back({static_cast<NodeIndex>(i), static_cast<NodeIndex>(j), s});
        }
    return SignedGraph::from_edges(n, edges);
}

struct PlantedGraph {
    SignedGraph graph;
    Partition planted;           // side of every node in the planted two-coalition split
    std::size_t flipped_edges;   // edges whose sign disagrees with the planted split
};

/// Two planted coalitions (random sides) with edge probability p_edge; edges are positive inside
/// and negative across coalitions, then `noise` randomly chosen edges have their sign flipped.
/// The planted split therefore frustrates exactly `flipped_edges` edges.
inline PlantedGraph planted_coalition_graph(std::size_t n, double p_edge, std::size_t noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> side(n);
    for (auto& s : side) s = unit_uniform(rng) < 0.5 ? 0 : 1;
    std::vector<SignedEdge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (unit_uniform(rng) >= p_edge) continue;
            edges.push_back({static_cast<NodeIndex>(i), static_cast<NodeIndex>(j),
                             side[i] == side[j] ? Sign::positive : Sign::negative});
        }
    std::vector<std::size_t> order(edges.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    const std::size_t flips = std::min(noise, edges.size());
    for (std::size_t k = 0; k < flips; ++k) {
        const auto pick = k + static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(order.size() - k));
        std::swap(order[k], order[pick]);
        edges[order[k]].sign = -edges[order[k]].sign;
    }
    return {SignedGraph::from_edges(n, edges), Partition(std::move(side)), flips};
}

} // namespace signet
