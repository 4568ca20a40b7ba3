#pragma once

// Partial-balance measures: triangle index T(G) and normalized frustration F(G).

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "signet/errors.hpp"
#include "signet/signed_graph.hpp"

namespace signet {

struct TriangleCounts {
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;

    std::uint64_t total() const noexcept { return positive + negative; }
};

inline TriangleCounts count_triangle_signs(const SignedGraph& g) {
    TriangleCounts c;
    for_each_triangle(g, [&](const Triangle& t) {
        if (triangle_sign(g, t) == Sign::positive)
            ++c.positive;
        else
            ++c.negative;
    });
    return c;
}

inline TriangleCounts count_triangle_signs(const SignedGraph& g, const TriangleSet& triangles) {
    TriangleCounts c;
    for (const auto& t : triangles) {
        if (triangle_sign(g, t) == Sign::positive)
            ++c.positive;
        else
            ++c.negative;
    }
    return c;
}

/// Fraction of positive triangles. Integer counts are divided only at the end.
inline double triangle_index(const SignedGraph& g) {
    const auto c = count_triangle_signs(g);
    if (c.total() == 0) throw UndefinedError("triangle index undefined: graph has no triangles");
    return static_cast<double>(c.positive) / static_cast<double>(c.total());
}

struct TraceTriple {
    std::int64_t signed_trace = 0;   // Tr(A^3)
    std::int64_t unsigned_trace = 0; // Tr(|A|^3)
};

/// Tr(A^3) and Tr(|A|^3) by dense integer matrix products. O(n^3); intended for cross-checks.
inline TraceTriple adjacency_cube_traces(const SignedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::int64_t> a(n * n, 0), sq(n * n, 0), usq(n * n, 0);
    for (const auto& e : g.edges()) {
        a[static_cast<std::size_t>(e.u) * n + static_cast<std::size_t>(e.v)] = to_int(e.sign);
        a[static_cast<std::size_t>(e.v) * n + static_cast<std::size_t>(e.u)] = to_int(e.sign);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const auto aik = a[i * n + k];
            if (aik == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                sq[i * n + j] += aik * a[k * n + j];
                usq[i * n + j] += std::abs(aik) * std::abs(a[k * n + j]);
            }
        }
    TraceTriple t;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            t.signed_trace += sq[i * n + k] * a[k * n + i];
            t.unsigned_trace += usq[i * n + k] * std::abs(a[k * n + i]);
        }
    return t;
}

/// (Tr(A^3) + Tr(|A|^3)) / (2 Tr(|A|^3)), evaluated from explicit matrix powers.
inline double triangle_index_by_trace(const SignedGraph& g) {
    const auto t = adjacency_cube_traces(g);
    if (t.unsigned_trace == 0) throw UndefinedError("triangle index undefined: graph has no triangles");
    return static_cast<double>(t.signed_trace + t.unsigned_trace) / (2.0 * static_cast<double>(t.unsigned_trace));
}

/// F(G) = 1 - 2L/m.
inline double normalized_frustration(std::int64_t frustration_index, std::int64_t edge_count) {
    if (edge_count <= 0) throw std::invalid_argument("normalized frustration needs at least one edge");
    if (frustration_index < 0 || frustration_index > edge_count)
        throw std::invalid_argument("frustration index must lie in [0, m]");
    return 1.0 - 2.0 * static_cast<double>(frustration_index) / static_cast<double>(edge_count);
}

/// Round half away from zero at `digits` decimals, the convention of the published tables.
/// The nudge absorbs binary representation error of values such as 0.0745.
inline double round_half_up(double x, int digits) {
    const double scale = std::pow(10.0, digits);
    const double scaled = std::abs(x) * scale;
    const double r = std::floor(scaled + 0.5 + 1e-9 * std::max(1.0, scaled)) / scale;
    return x < 0 ? -r : r;
}

struct BalanceReport {
    std::optional<double> triangle_index;
    std::uint64_t triangle_count = 0;
    std::optional<std::int64_t> frustration_index;
    std::optional<double> normalized_frustration;
    std::optional<double> lower_bound;
};

/// Triangle part of a report; the frustration fields are filled by the solver pipeline.
inline BalanceReport balance_report(const SignedGraph& g) {
    BalanceReport r;
    const auto c = count_triangle_signs(g);
    r.triangle_count = c.total();
    if (c.total() > 0) r.triangle_index = static_cast<double>(c.positive) / static_cast<double>(c.total());
    return r;
}

inline void attach_frustration(BalanceReport& r, const SignedGraph& g, std::int64_t frustration_index,
                               std::optional<double> lower_bound) {
    r.frustration_index = frustration_index;
    if (g.edge_count() > 0)
        r.normalized_frustration = normalized_frustration(frustration_index, static_cast<std::int64_t>(g.edge_count()));
    r.lower_bound = lower_bound;
}

} // namespace signet
