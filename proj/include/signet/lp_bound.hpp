#pragma once

// Certified lower bound on the frustration index from the continuous relaxation
//
//   min  sum_{E+} (x_i + x_j - 2x_ij) + sum_{E-} (1 - x_i - x_j + 2x_ij)
//   s.t. x_ij <= (x_i + x_j)/2          on positive edges
//        x_ij >= x_i + x_j - 1          on negative edges
//        four triangle inequalities     for each triangle kept by the tier
//        0 <= x <= 1
//
// The LP dual is solved with a revised simplex. Whatever the solver returns, the reported value
// is recomputed from the dual multipliers by weak duality, so it is a valid bound even when the
// simplex stops early or accumulates rounding error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "signet/signed_graph.hpp"
#include "signet/triangle_packing.hpp"

namespace signet {

/// Which triangle inequalities enter the relaxation. Every tier gives a valid bound.
enum class BoundTier : int {
    edges_only = 0,         // no triangle inequalities
    negative_triangles = 1, // triangles with at least one negative edge
    all_triangles = 2,
};

enum class LowerBoundMethod { lp_full, lp_root_no_triangles, triangle_packing };

constexpr std::string_view to_string(LowerBoundMethod m) noexcept {
    switch (m) {
    case LowerBoundMethod::lp_full: return "lp_full";
    case LowerBoundMethod::lp_root_no_triangles: return "lp_root_no_triangles";
    case LowerBoundMethod::triangle_packing: return "triangle_packing";
    }
    return "unknown";
}

struct BoundConfig {
    std::optional<BoundTier> tier;        // defaults to default_tier(g)
    std::size_t max_iterations = 200'000;
    std::size_t max_basis_size = 5'000;   // n + m; the basis inverse is dense
    double time_limit_seconds = 600.0;
    double feasibility_tolerance = 1e-7;
};

inline BoundTier default_tier(const SignedGraph& g) noexcept {
    return g.node_count() <= 150 ? BoundTier::negative_triangles : BoundTier::edges_only;
}

inline bool triangle_in_tier(const SignedGraph& g, const Triangle& t, BoundTier tier) {
    switch (tier) {
    case BoundTier::edges_only: return false;
    case BoundTier::all_triangles: return true;
    case BoundTier::negative_triangles:
        return g.edge(t.ij).sign == Sign::negative || g.edge(t.ik).sign == Sign::negative ||
               g.edge(t.jk).sign == Sign::negative;
    }
    return false;
}

struct LpBound {
    double value = 0.0; // certified: value <= Y* <= L(G)
    LowerBoundMethod method = LowerBoundMethod::lp_full;
    BoundTier tier = BoundTier::negative_triangles;
    std::size_t iterations = 0;
    std::size_t constraint_count = 0; // m + 4|T| for the triangles kept by the tier
    std::size_t triangle_count = 0;
    bool optimal = false;
};

namespace detail {

/// min c'z + offset  s.t.  A z >= b,  0 <= z <= 1.  Rows of A are stored CSR.
struct RelaxationModel {
    std::size_t variable_count = 0;
    std::vector<double> cost;
    double offset = 0.0;
    std::vector<std::size_t> row_start{0};
    std::vector<std::int32_t> col;
    std::vector<double> coef;
    std::vector<double> rhs;

    std::size_t row_count() const noexcept { return rhs.size(); }

    void add_row(std::initializer_list<std::pair<std::int32_t, double>> entries, double b) {
        for (const auto& [j, a] : entries) {
            col.push_back(j);
            coef.push_back(a);
        }
        row_start.push_back(col.size());
        rhs.push_back(b);
    }
};

inline RelaxationModel build_relaxation(const SignedGraph& g, std::span<const Triangle> triangles) {
    const auto n = static_cast<std::int32_t>(g.node_count());
    RelaxationModel lp;
    lp.variable_count = g.node_count() + g.edge_count();
    lp.cost.assign(lp.variable_count, 0.0);
    auto edge_var = [n](EdgeIndex e) { return n + e; };

    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        const auto& e = g.edges()[k];
        const auto xe = edge_var(static_cast<EdgeIndex>(k));
        if (e.sign == Sign::positive) {
            lp.cost[static_cast<std::size_t>(e.u)] += 1.0;
            lp.cost[static_cast<std::size_t>(e.v)] += 1.0;
            lp.cost[static_cast<std::size_t>(xe)] -= 2.0;
            lp.add_row({{e.u, 0.5}, {e.v, 0.5}, {xe, -1.0}}, 0.0);
        } else {
            lp.offset += 1.0;
            lp.cost[static_cast<std::size_t>(e.u)] -= 1.0;
            lp.cost[static_cast<std::size_t>(e.v)] -= 1.0;
            lp.cost[static_cast<std::size_t>(xe)] += 2.0;
            lp.add_row({{xe, 1.0}, {e.u, -1.0}, {e.v, -1.0}}, -1.0);
        }
    }
    for (const auto& t : triangles) {
        const auto ij = edge_var(t.ij), ik = edge_var(t.ik), jk = edge_var(t.jk);
        lp.add_row({{t.i, 1.0}, {jk, 1.0}, {ij, -1.0}, {ik, -1.0}}, 0.0);
        lp.add_row({{t.j, 1.0}, {ik, 1.0}, {ij, -1.0}, {jk, -1.0}}, 0.0);
        lp.add_row({{t.k, 1.0}, {ij, 1.0}, {ik, -1.0}, {jk, -1.0}}, 0.0);
        lp.add_row({{ij, 1.0}, {ik, 1.0}, {jk, 1.0}, {t.i, -1.0}, {t.j, -1.0}, {t.k, -1.0}}, -1.0);
    }
    return lp;
}

/// Weak-duality bound for multipliers y >= 0 on the rows of A:
///   offset + b'y + sum_j min(0, c_j - (A'y)_j),
/// minus a margin covering floating-point accumulation error.
inline double dual_bound(const RelaxationModel& lp, std::span<const double> y) {
    std::vector<long double> reduced(lp.cost.begin(), lp.cost.end());
    long double value = lp.offset;
    long double magnitude = std::abs(lp.offset);
    for (std::size_t r = 0; r < lp.row_count(); ++r) {
        const long double yr = std::max(0.0, y[r]);
        if (yr == 0) continue;
        value += lp.rhs[r] * yr;
        magnitude += std::abs(lp.rhs[r] * yr);
        for (auto p = lp.row_start[r]; p < lp.row_start[r + 1]; ++p)
            reduced[static_cast<std::size_t>(lp.col[p])] -= lp.coef[p] * yr;
    }
    for (auto rj : reduced) {
        if (rj < 0) value += rj;
        magnitude += std::abs(rj);
    }
    return static_cast<double>(value - 1e-9L * (1.0L + magnitude));
}

struct DualSolve {
    std::vector<double> y;
    std::size_t iterations = 0;
    bool optimal = false;
};

/// Revised primal simplex on the dual
///   max b'y - 1'w   s.t.   A'y - w + t = c,   y, w, t >= 0,
/// whose slack/surplus basis is feasible from the start. The basis inverse is kept dense and
/// refactorized periodically. Right-hand sides are perturbed slightly to break degeneracy; this
/// only affects optimality, never the certified value computed by dual_bound.
inline DualSolve solve_dual(const RelaxationModel& lp, const BoundConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const std::size_t rows = lp.variable_count;
    const std::size_t ny = lp.row_count();
    const std::size_t ncols = ny + 2 * rows;
    const double pivot_tol = 1e-9;
    const double price_tol = 1e-9;

    DualSolve out;
    out.y.assign(ny, 0.0);
    if (rows == 0) {
        out.optimal = true;
        return out;
    }

    std::vector<double> row_sign(rows), h(rows);
    std::mt19937_64 rng(0x5eed5eedULL);
    for (std::size_t j = 0; j < rows; ++j) {
        row_sign[j] = lp.cost[j] < 0 ? -1.0 : 1.0;
        const double jitter = 1e-8 * (1.0 + static_cast<double>(rng() >> 11) * 0x1.0p-53);
        h[j] = std::abs(lp.cost[j]) + jitter;
    }

    auto objective = [&](std::size_t q) -> double {
        if (q < ny) return lp.rhs[q];
        if (q < ny + rows) return -1.0;
        return 0.0;
    };
    // Visits the (row, value) entries of column q in the sign-adjusted system.
    auto for_column = [&](std::size_t q, auto&& f) {
        if (q < ny) {
            for (auto p = lp.row_start[q]; p < lp.row_start[q + 1]; ++p) {
                const auto j = static_cast<std::size_t>(lp.col[p]);
                f(j, row_sign[j] * lp.coef[p]);
            }
        } else if (q < ny + rows) {
            const auto j = q - ny;
            f(j, -row_sign[j]);
        } else {
            const auto j = q - ny - rows;
            f(j, row_sign[j]);
        }
    };

    std::vector<std::size_t> basis(rows);
    std::vector<char> is_basic(ncols, 0);
    for (std::size_t j = 0; j < rows; ++j) {
        basis[j] = row_sign[j] > 0 ? ny + rows + j : ny + j;
        is_basic[basis[j]] = 1;
    }
    // Column-major dense inverse: binv[k * rows + i] = (B^-1)_{ik}.
    std::vector<double> binv(rows * rows, 0.0);
    for (std::size_t j = 0; j < rows; ++j) binv[j * rows + j] = 1.0;
    std::vector<double> xb = h;
    std::vector<double> pi(rows, 0.0), alpha(rows, 0.0);

    auto recompute_pi = [&] {
        for (std::size_t k = 0; k < rows; ++k) {
            double s = 0.0;
            const double* colk = &binv[k * rows];
            for (std::size_t i = 0; i < rows; ++i) s += objective(basis[i]) * colk[i];
            pi[k] = s;
        }
    };
    auto refactorize = [&] {
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
        for (std::size_t i = 0; i < rows; ++i)
            for_column(basis[i], [&](std::size_t j, double v) {
                b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
            });
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
        Eigen::MatrixXd inv = lu.inverse();
        std::copy(inv.data(), inv.data() + rows * rows, binv.begin());
        Eigen::Map<const Eigen::VectorXd> hv(h.data(), static_cast<Eigen::Index>(rows));
        Eigen::VectorXd x = inv * hv;
        for (std::size_t i = 0; i < rows; ++i) xb[i] = std::max(0.0, x(static_cast<Eigen::Index>(i)));
    };

    const std::size_t refactor_interval = std::max<std::size_t>(500, rows);
    std::size_t degenerate_run = 0;
    recompute_pi();

    for (;;) {
        if (out.iterations >= cfg.max_iterations) break;
        if ((out.iterations & 63U) == 0 &&
            std::chrono::duration<double>(clock::now() - start).count() > cfg.time_limit_seconds)
            break;
        if (out.iterations > 0 && out.iterations % refactor_interval == 0) refactorize();
        if (out.iterations % 100 == 0) recompute_pi();

        // Pricing: Dantzig, switching to Bland's rule during long degenerate runs.
        const bool bland = degenerate_run > 2 * rows + 50;
        std::size_t entering = ncols;
        double best = price_tol;
        for (std::size_t q = 0; q < ncols; ++q) {
            if (is_basic[q]) continue;
            double d = objective(q);
            for_column(q, [&](std::size_t j, double v) { d -= pi[j] * v; });
            if (d > best) {
                best = d;
                entering = q;
                if (bland) break;
            }
        }
        if (entering == ncols) {
            out.optimal = true;
            break;
        }

        std::fill(alpha.begin(), alpha.end(), 0.0);
        for_column(entering, [&](std::size_t j, double v) {
            const double* colj = &binv[j * rows];
            for (std::size_t i = 0; i < rows; ++i) alpha[i] += v * colj[i];
        });

        // Harris two-pass ratio test.
        double theta_max = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rows; ++i)
            if (alpha[i] > pivot_tol) theta_max = std::min(theta_max, (xb[i] + cfg.feasibility_tolerance) / alpha[i]);
        if (!std::isfinite(theta_max)) break; // unbounded dual cannot happen for a feasible primal
        std::size_t leave = rows;
        double largest = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            if (alpha[i] > pivot_tol && xb[i] / alpha[i] <= theta_max && alpha[i] > largest) {
                largest = alpha[i];
                leave = i;
            }
        const double theta = std::max(0.0, xb[leave] / alpha[leave]);
        degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;

        for (std::size_t i = 0; i < rows; ++i) xb[i] = std::max(0.0, xb[i] - theta * alpha[i]);
        xb[leave] = theta;

        const double ar = alpha[leave];
        for (std::size_t k = 0; k < rows; ++k) {
            double* colk = &binv[k * rows];
            const double t = colk[leave] / ar;
            if (t != 0.0)
                for (std::size_t i = 0; i < rows; ++i) colk[i] -= alpha[i] * t;
            colk[leave] = t;
        }
        for (std::size_t k = 0; k < rows; ++k) pi[k] += best * binv[k * rows + leave];

        is_basic[basis[leave]] = 0;
        basis[leave] = entering;
        is_basic[entering] = 1;
        ++out.iterations;
    }

    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] < ny) out.y[basis[i]] = std::max(0.0, xb[i]);
    return out;
}

} // namespace detail

/// Certified lower bound Y* <= L(G). `triangles` may be the full triangle set; the tier in
/// `cfg` selects which of them contribute inequalities. When the simplex exceeds its limits the
/// bound falls back to the negative-triangle packing.
inline LpBound lp_lower_bound(const SignedGraph& g, const TriangleSet& triangles, const BoundConfig& cfg = {}) {
    LpBound out;
    out.tier = cfg.tier.value_or(default_tier(g));

    std::vector<Triangle> kept;
    for (const auto& t : triangles)
        if (triangle_in_tier(g, t, out.tier)) kept.push_back(t);
    out.triangle_count = kept.size();
    out.constraint_count = g.edge_count() + 4 * kept.size();

    if (out.tier == BoundTier::edges_only) {
        // x_i = 1/2 with x_ij = 1/2 on positive and 0 on negative edges zeroes every term,
        // and the edge constraints keep each term nonnegative, so the optimum is exactly 0.
        out.method = LowerBoundMethod::lp_root_no_triangles;
        out.value = 0.0;
        out.optimal = true;
        return out;
    }

    auto fallback = [&] {
        out.method = LowerBoundMethod::triangle_packing;
        out.value = static_cast<double>(triangle_packing_bound(g, triangles));
        out.optimal = false;
        return out;
    };
    if (g.node_count() + g.edge_count() > cfg.max_basis_size) return fallback();

    const auto model = detail::build_relaxation(g, kept);
    const auto solved = detail::solve_dual(model, cfg);
    out.iterations = solved.iterations;
    if (!solved.optimal) return fallback();
    out.method = LowerBoundMethod::lp_full;
    out.optimal = true;
    out.value = std::max(0.0, detail::dual_bound(model, solved.y));
    return out;
}

/// Smallest integer not below a certified real bound, tolerant of the bound's safety margin.
inline std::int64_t integral_lower_bound(double certified) {
    return static_cast<std::int64_t>(std::ceil(certified - 1e-6));
}

} // namespace signet
