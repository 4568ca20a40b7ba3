#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "signet/signed_graph.hpp"

namespace signet {

/// Greedy edge-disjoint packing of negative triangles.
///
/// Every negative triangle holds at least one frustrated edge under any partition, so the
/// size of an edge-disjoint packing is a lower bound on L(G). Triangles whose edges lie in
/// few other negative triangles are taken first; ties keep lexicographic order.
inline std::vector<Triangle> pack_negative_triangles(const SignedGraph& g, const TriangleSet& triangles) {
    std::vector<std::size_t> negative;
    std::vector<std::size_t> load(g.edge_count(), 0);
    for (std::size_t k = 0; k < triangles.size(); ++k) {
        const auto& t = triangles[k];
        if (triangle_sign(g, t) != Sign::negative) continue;
        negative.push_back(k);
        ++load[static_cast<std::size_t>(t.ij)];
        ++load[static_cast<std::size_t>(t.ik)];
        ++load[static_cast<std::size_t>(t.jk)];
    }
    auto weight = [&](std::size_t k) {
        const auto& t = triangles[k];
        return load[static_cast<std::size_t>(t.ij)] + load[static_cast<std::size_t>(t.ik)] +
               load[static_cast<std::size_t>(t.jk)];
    };
    std::stable_sort(negative.begin(), negative.end(), [&](std::size_t a, std::size_t b) { return weight(a) < weight(b); });

    std::vector<char> used(g.edge_count(), 0);
    std::vector<Triangle> packed;
    for (auto k : negative) {
        const auto& t = triangles[k];
        auto& a = used[static_cast<std::size_t>(t.ij)];
        auto& b = used[static_cast<std::size_t>(t.ik)];
        auto& c = used[static_cast<std::size_t>(t.jk)];
        if (a || b || c) continue;
        a = b = c = 1;
        packed.push_back(t);
    }
    return packed;
}

inline std::size_t triangle_packing_bound(const SignedGraph& g, const TriangleSet& triangles) {
    return pack_negative_triangles(g, triangles).size();
}

} // namespace signet
