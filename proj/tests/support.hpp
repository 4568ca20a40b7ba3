#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "signet/generators.hpp"
#include "signet/signed_graph.hpp"

namespace signet::testing {

inline SignedGraph toy5() {
    const std::vector<EdgeRow> rows = {{"1", "3", +1}, {"2", "3", +1}, {"2", "5", -1}, {"1", "4", -1},
                                       {"3", "4", -1}, {"4", "5", +1}, {"1", "5", +1}};
    return SignedGraph::from_edge_list(rows);
}

/// Partition with the listed node ids on side 1 and everything else on side 0.
inline Partition with_side_one(const SignedGraph& g, std::initializer_list<const char*> ids) {
    Partition p(g.node_count(), 0);
    for (const char* id : ids) p.set(static_cast<std::size_t>(*g.index_of(id)), 1);
    return p;
}

/// Brute-force O(n^3) triangle scan over the signed adjacency matrix.
inline std::vector<std::array<NodeIndex, 3>> naive_triangles(const SignedGraph& g) {
    const auto n = static_cast<NodeIndex>(g.node_count());
    std::vector<std::array<NodeIndex, 3>> out;
    for (NodeIndex i = 0; i < n; ++i)
        for (NodeIndex j = i + 1; j < n; ++j)
            for (NodeIndex k = j + 1; k < n; ++k)
                if (g.adjacency(i, j) != 0 && g.adjacency(i, k) != 0 && g.adjacency(j, k) != 0) out.push_back({i, j, k});
    return out;
}

/// Relabels node i as perm[i] (ids follow their nodes).
inline SignedGraph permute(const SignedGraph& g, const std::vector<NodeIndex>& perm) {
    std::vector<std::string> ids(g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i) ids[static_cast<std::size_t>(perm[i])] = g.node_ids()[i];
    std::vector<SignedEdge> edges;
    for (const auto& e : g.edges())
        edges.push_back({perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)], e.sign});
    return SignedGraph::from_edges(std::move(ids), edges);
}

inline Partition random_partition(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::uint8_t> s(n);
    for (auto& x : s) x = static_cast<std::uint8_t>(rng() & 1U);
    return Partition(std::move(s));
}

inline std::vector<NodeIndex> random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<NodeIndex> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<NodeIndex>(i);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng() % i)]);
    return perm;
}

} // namespace signet::testing
