#pragma once

// Exact frustration index by bounded branch-and-bound.
//
// The search assigns nodes to sides one at a time (node 0 is fixed to side 0, since a partition
// and its complement have the same frustration). A partial assignment is bounded below by
//   committed frustration among assigned nodes
//   + sum over unassigned u of min(cost of u on side 0, cost on side 1) w.r.t. assigned neighbours
//   + packed negative triangles whose three nodes are all unassigned,
// three terms over disjoint edge sets. The global lower bound from the relaxation/packing closes
// the search as soon as the incumbent reaches it.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "signet/balance_metrics.hpp"
#include "signet/lp_bound.hpp"
#include "signet/signed_graph.hpp"
#include "signet/triangle_packing.hpp"

namespace signet {

struct BoundState {
    double lower = 0.0;       // certified lower bound on L(G)
    std::int64_t upper = 0;   // frustration count of the incumbent
    Partition incumbent;
    LowerBoundMethod lower_method = LowerBoundMethod::triangle_packing;
};

struct SolveConfig {
    std::uint64_t node_budget = 1'000'000;
    double time_budget_seconds = 600.0;
    unsigned threads = 1;
    bool canonical_partition = true; // report the lexicographically smallest optimum
    std::ostream* progress = nullptr;
    std::uint64_t progress_interval = 100'000;
};

struct SolveResult {
    std::int64_t frustration_index = 0; // L(G) when certified, else the best count found
    Partition optimal_partition;
    BoundState proof;
    std::uint64_t node_count_explored = 0;
    double wall_time = 0.0;
    bool certified = false;
    bool partition_canonical = false;
};

/// Democrats go to side 0, everyone else (Republicans and Independents) to side 1.
inline Partition warm_start_partition(const NodeAttributes& attrs) {
    std::vector<std::uint8_t> sides(attrs.size());
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        const auto p = attrs.party(i);
        if (!p) throw std::invalid_argument("warm start needs a party label for every node (missing at index " +
                                            std::to_string(i) + ")");
        sides[i] = *p == Party::democrat ? 0 : 1;
    }
    return Partition(std::move(sides));
}

/// First-improvement single-node flips: scan nodes in index order, apply the first flip that
/// lowers the frustration count, restart the scan, stop at a 1-flip local optimum.
inline Partition local_search_improve(const SignedGraph& g, Partition p) {
    require_partition_size(g, p);
    const std::size_t n = g.node_count();
    std::vector<std::int64_t> frustrated(n, 0);
    for (const auto& e : g.edges())
        if (is_frustrated(e.sign, p[static_cast<std::size_t>(e.u)], p[static_cast<std::size_t>(e.v)])) {
            ++frustrated[static_cast<std::size_t>(e.u)];
            ++frustrated[static_cast<std::size_t>(e.v)];
        }
    std::size_t u = 0;
    while (u < n) {
        const auto deg = static_cast<std::int64_t>(g.degree(static_cast<NodeIndex>(u)));
        if (deg - 2 * frustrated[u] < 0) {
            p.flip(u);
            for (const auto& nb : g.neighbors(static_cast<NodeIndex>(u))) {
                const bool now = is_frustrated(nb.sign, p[u], p[static_cast<std::size_t>(nb.node)]);
                frustrated[static_cast<std::size_t>(nb.node)] += now ? 1 : -1;
            }
            frustrated[u] = deg - frustrated[u];
            u = 0;
        } else {
            ++u;
        }
    }
    return p;
}

/// Breadth-first construction: each node joins the side that frustrates fewer edges to the
/// already placed nodes (ties to side 0).
inline Partition greedy_partition(const SignedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<int> side(n, -1);
    std::vector<NodeIndex> queue;
    queue.reserve(n);
    for (std::size_t root = 0; root < n; ++root) {
        if (side[root] >= 0) continue;
        side[root] = 0;
        queue.assign(1, static_cast<NodeIndex>(root));
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (const auto& nb : g.neighbors(queue[head])) {
                const auto v = static_cast<std::size_t>(nb.node);
                if (side[v] >= 0) continue;
                int cost[2] = {0, 0};
                for (const auto& w : g.neighbors(nb.node)) {
                    const int sw = side[static_cast<std::size_t>(w.node)];
                    if (sw < 0) continue;
                    for (int s = 0; s < 2; ++s)
                        cost[s] += is_frustrated(w.sign, static_cast<std::uint8_t>(s), static_cast<std::uint8_t>(sw)) ? 1 : 0;
                }
                side[v] = cost[1] < cost[0] ? 1 : 0;
                queue.push_back(nb.node);
            }
        }
    }
    return Partition(std::vector<std::uint8_t>(side.begin(), side.end()));
}

struct BruteForceResult {
    std::int64_t frustration_index = 0;
    Partition partition; // lexicographically smallest minimizer with x_0 = 0
};

/// Exhaustive search over all 2^(n-1) partitions with x_0 = 0. Refuses n > 20.
inline BruteForceResult brute_force_oracle(const SignedGraph& g) {
    const std::size_t n = g.node_count();
    if (n > 20) throw std::invalid_argument("brute force oracle is limited to 20 nodes");
    // Bit (n-1-i) holds x_i, so increasing masks enumerate assignments in lexicographic order.
    struct E {
        unsigned su, sv;
        unsigned neg;
    };
    std::vector<E> edges;
    for (const auto& e : g.edges())
        edges.push_back({static_cast<unsigned>(n - 1 - static_cast<std::size_t>(e.u)),
                         static_cast<unsigned>(n - 1 - static_cast<std::size_t>(e.v)), e.sign == Sign::negative ? 1U : 0U});
    const std::uint64_t limit = n == 0 ? 1 : (std::uint64_t{1} << (n - 1));
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::uint64_t best_mask = 0;
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        std::int64_t count = 0;
        for (const auto& e : edges) count += static_cast<std::int64_t>((((mask >> e.su) ^ (mask >> e.sv)) & 1U) ^ e.neg);
        if (count < best) {
            best = count;
            best_mask = mask;
        }
    }
    std::vector<std::uint8_t> sides(n);
    for (std::size_t i = 0; i < n; ++i) sides[i] = static_cast<std::uint8_t>((best_mask >> (n - 1 - i)) & 1U);
    return {best, Partition(std::move(sides))};
}

namespace detail {

struct SharedSearch {
    std::atomic<std::int64_t> incumbent;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> exhausted{false};
    std::mutex mutex;
    Partition best;
    std::int64_t global_lower = 0;
    std::uint64_t node_budget = 0;
    std::chrono::steady_clock::time_point deadline;
    std::ostream* progress = nullptr;
    std::uint64_t progress_interval = 0;

    explicit SharedSearch(std::int64_t upper) : incumbent(upper) {}
};

/// Incremental partial-assignment state for one search worker.
class SearchState {
  public:
    SearchState(const SignedGraph& g, std::span<const Triangle> packed)
        : g_(g), n_(g.node_count()), side_(n_, -1), cost0_(n_, 0), cost1_(n_, 0), packed_(packed.begin(), packed.end()),
          node_packed_(n_), touched_(packed.size(), 0), intact_(static_cast<std::int64_t>(packed.size())) {
        for (std::size_t t = 0; t < packed_.size(); ++t) {
            node_packed_[static_cast<std::size_t>(packed_[t].i)].push_back(t);
            node_packed_[static_cast<std::size_t>(packed_[t].j)].push_back(t);
            node_packed_[static_cast<std::size_t>(packed_[t].k)].push_back(t);
        }
    }

    std::int64_t bound() const noexcept { return committed_ + sum_min_ + intact_; }
    std::int64_t committed() const noexcept { return committed_; }
    std::size_t assigned() const noexcept { return assigned_; }
    std::size_t size() const noexcept { return n_; }
    int side(std::size_t u) const noexcept { return side_[u]; }
    std::int64_t cost(std::size_t u, int s) const noexcept { return s == 0 ? cost0_[u] : cost1_[u]; }

    void assign(NodeIndex u, int s) { apply(u, s, +1); }
    void unassign(NodeIndex u, int s) { apply(u, s, -1); }

    Partition partition() const {
        std::vector<std::uint8_t> sides(n_);
        for (std::size_t i = 0; i < n_; ++i) sides[i] = static_cast<std::uint8_t>(side_[i] < 0 ? 0 : side_[i]);
        return Partition(std::move(sides));
    }

    /// Largest |cost0 - cost1| among unassigned nodes, ties to the smaller index.
    NodeIndex most_constrained() const {
        std::int64_t best = -1;
        std::size_t pick = n_;
        for (std::size_t u = 0; u < n_; ++u) {
            if (side_[u] >= 0) continue;
            const auto gap = std::abs(cost0_[u] - cost1_[u]);
            if (gap > best) {
                best = gap;
                pick = u;
            }
        }
        return static_cast<NodeIndex>(pick);
    }

    NodeIndex first_unassigned() const {
        for (std::size_t u = 0; u < n_; ++u)
            if (side_[u] < 0) return static_cast<NodeIndex>(u);
        return static_cast<NodeIndex>(n_);
    }

  private:
    void apply(NodeIndex node, int s, int dir) {
        const auto u = static_cast<std::size_t>(node);
        if (dir > 0) {
            committed_ += cost(u, s);
            sum_min_ -= std::min(cost0_[u], cost1_[u]);
            side_[u] = s;
            ++assigned_;
        }
        for (const auto& nb : g_.neighbors(node)) {
            const auto v = static_cast<std::size_t>(nb.node);
            if (side_[v] >= 0) continue;
            const auto before = std::min(cost0_[v], cost1_[v]);
            // A positive edge is frustrated when v takes the other side, a negative one when it takes s.
            const int bad = nb.sign == Sign::positive ? 1 - s : s;
            (bad == 0 ? cost0_[v] : cost1_[v]) += dir;
            sum_min_ += std::min(cost0_[v], cost1_[v]) - before;
        }
        for (auto t : node_packed_[u]) {
            if (dir > 0) {
                if (touched_[t]++ == 0) --intact_;
            } else {
                if (--touched_[t] == 0) ++intact_;
            }
        }
        if (dir < 0) {
            side_[u] = -1;
            --assigned_;
            sum_min_ += std::min(cost0_[u], cost1_[u]);
            committed_ -= cost(u, s);
        }
    }

    const SignedGraph& g_;
    std::size_t n_;
    std::vector<int> side_;
    std::vector<std::int64_t> cost0_, cost1_;
    std::vector<Triangle> packed_;
    std::vector<std::vector<std::size_t>> node_packed_;
    std::vector<int> touched_;
    std::int64_t intact_ = 0;
    std::int64_t committed_ = 0;
    std::int64_t sum_min_ = 0;
    std::size_t assigned_ = 0;
};

inline bool tick(SharedSearch& shared) {
    const auto count = shared.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (count > shared.node_budget) {
        shared.exhausted = true;
        shared.stop = true;
    } else if ((count & 1023U) == 0 && std::chrono::steady_clock::now() > shared.deadline) {
        shared.exhausted = true;
        shared.stop = true;
    }
    if (shared.progress && shared.progress_interval > 0 && count % shared.progress_interval == 0) {
        std::lock_guard lock(shared.mutex);
        *shared.progress << "bound lower=" << shared.global_lower << " upper=" << shared.incumbent.load()
                         << " nodes=" << count << '\n';
    }
    return !shared.stop.load(std::memory_order_relaxed);
}

/// Depth-first minimisation below the current state.
inline void minimise(SearchState& st, SharedSearch& shared) {
    if (!tick(shared)) return;
    if (st.assigned() == st.size()) {
        const auto value = st.committed();
        std::lock_guard lock(shared.mutex);
        if (value < shared.incumbent.load()) {
            shared.incumbent = value;
            shared.best = st.partition();
            if (value <= shared.global_lower) shared.stop = true;
        }
        return;
    }
    const NodeIndex u = st.most_constrained();
    const auto uu = static_cast<std::size_t>(u);
    const int first = st.cost(uu, 0) <= st.cost(uu, 1) ? 0 : 1;
    for (int s : {first, 1 - first}) {
        st.assign(u, s);
        if (st.bound() < shared.incumbent.load(std::memory_order_relaxed)) minimise(st, shared);
        st.unassign(u, s);
        if (shared.stop.load(std::memory_order_relaxed)) return;
    }
}

/// Index-ordered search with side 0 first for the first complete assignment of cost <= target;
/// that assignment is the lexicographically smallest optimum.
inline bool first_lexicographic(SearchState& st, SharedSearch& shared, std::int64_t target, Partition& out) {
    if (!tick(shared)) return false;
    if (st.assigned() == st.size()) {
        if (st.committed() <= target) {
            out = st.partition();
            return true;
        }
        return false;
    }
    const NodeIndex u = st.first_unassigned();
    for (int s : {0, 1}) {
        st.assign(u, s);
        bool found = false;
        if (st.bound() <= target) found = first_lexicographic(st, shared, target, out);
        st.unassign(u, s);
        if (found) return true;
        if (shared.stop.load(std::memory_order_relaxed)) return false;
    }
    return false;
}

/// Open subproblems near the root, in depth-first order, for parallel workers.
inline void collect_frontier(SearchState& st, const SharedSearch& shared, std::size_t depth,
                             std::vector<std::pair<NodeIndex, int>>& path,
                             std::vector<std::vector<std::pair<NodeIndex, int>>>& out) {
    if (depth == 0 || st.assigned() == st.size()) {
        out.push_back(path);
        return;
    }
    const NodeIndex u = st.most_constrained();
    const auto uu = static_cast<std::size_t>(u);
    const int first = st.cost(uu, 0) <= st.cost(uu, 1) ? 0 : 1;
    for (int s : {first, 1 - first}) {
        st.assign(u, s);
        if (st.bound() < shared.incumbent.load()) {
            path.emplace_back(u, s);
            collect_frontier(st, shared, depth - 1, path, out);
            path.pop_back();
        }
        st.unassign(u, s);
    }
}

} // namespace detail

/// Exact L(G) with a certificate, starting from the bounds in `bounds`.
/// `triangles` feeds the residual packing bound; it is enumerated here when not supplied.
inline SolveResult solve_exact(const SignedGraph& g, const BoundState& bounds, const SolveConfig& config = {},
                               const TriangleSet* triangles = nullptr) {
    const auto start = std::chrono::steady_clock::now();
    require_partition_size(g, bounds.incumbent);
    if (static_cast<std::int64_t>(frustration_count(g, bounds.incumbent)) != bounds.upper)
        throw std::invalid_argument("bound state upper value does not match its incumbent");
    if (bounds.lower > static_cast<double>(bounds.upper) + 1e-9)
        throw std::invalid_argument("bound state has lower > upper");

    TriangleSet local;
    if (!triangles) {
        local = enumerate_triangles(g);
        triangles = &local;
    }
    const auto packed = pack_negative_triangles(g, *triangles);

    detail::SharedSearch shared(bounds.upper);
    shared.best = bounds.incumbent;
    shared.global_lower = std::max<std::int64_t>(integral_lower_bound(bounds.lower), static_cast<std::int64_t>(packed.size()));
    shared.node_budget = config.node_budget;
    shared.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                  std::chrono::duration<double>(config.time_budget_seconds));
    shared.progress = config.progress;
    shared.progress_interval = config.progress_interval;

    if (shared.incumbent.load() > shared.global_lower && g.node_count() > 0) {
        detail::SearchState root(g, packed);
        root.assign(0, 0);
        if (root.bound() < shared.incumbent.load()) {
            const unsigned threads = std::max(1U, config.threads);
            if (threads == 1) {
                detail::minimise(root, shared);
            } else {
                std::vector<std::vector<std::pair<NodeIndex, int>>> tasks;
                std::vector<std::pair<NodeIndex, int>> path;
                std::size_t depth = 0;
                while ((std::size_t{1} << depth) < 8 * static_cast<std::size_t>(threads)) ++depth;
                detail::collect_frontier(root, shared, depth, path, tasks);
                std::atomic<std::size_t> next{0};
                auto worker = [&] {
                    detail::SearchState st(g, packed);
                    st.assign(0, 0);
                    for (std::size_t k = next++; k < tasks.size() && !shared.stop.load(); k = next++) {
                        for (const auto& [u, s] : tasks[k]) st.assign(u, s);
                        if (st.bound() < shared.incumbent.load()) detail::minimise(st, shared);
                        for (auto it = tasks[k].rbegin(); it != tasks[k].rend(); ++it) st.unassign(it->first, it->second);
                    }
                };
                std::vector<std::thread> pool;
                for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
                for (auto& t : pool) t.join();
            }
        }
    }

    SolveResult result;
    result.certified = !shared.exhausted.load();
    result.frustration_index = shared.incumbent.load();
    result.optimal_partition = shared.best;
    result.proof.upper = result.frustration_index;
    result.proof.incumbent = shared.best;
    result.proof.lower_method = bounds.lower_method;
    result.proof.lower = result.certified ? static_cast<double>(result.frustration_index)
                                          : std::max(bounds.lower, static_cast<double>(shared.global_lower));

    if (result.certified && config.canonical_partition && g.node_count() > 0) {
        shared.stop = false;
        detail::SearchState st(g, packed);
        st.assign(0, 0);
        Partition lexfirst;
        if (detail::first_lexicographic(st, shared, result.frustration_index, lexfirst)) {
            result.optimal_partition = lexfirst;
            result.proof.incumbent = lexfirst;
            result.partition_canonical = true;
        }
    }
    result.node_count_explored = std::min(shared.nodes.load(), config.node_budget);
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

// ---------------------------------------------------------------------------
// End-to-end bound-then-solve pipeline

struct FrustrationOptions {
    BoundConfig bound;
    SolveConfig solve;
    bool compute_lp = true;
};

struct FrustrationAnalysis {
    std::size_t triangle_count = 0;
    std::size_t packing_bound = 0;
    std::optional<LpBound> lp;
    std::optional<std::int64_t> warm_start_count; // f_G(X') before local search
    std::int64_t heuristic_upper = 0;
    SolveResult result;
};

/// Triangles, packing and relaxation bounds, heuristic incumbents (party warm start when
/// attributes are given, greedy construction, all-zeros; each polished by local search),
/// then branch-and-bound.
inline FrustrationAnalysis compute_frustration_index(const SignedGraph& g, const NodeAttributes* attrs = nullptr,
                                                     const FrustrationOptions& options = {}) {
    FrustrationAnalysis a;
    const auto triangles = enumerate_triangles(g);
    a.triangle_count = triangles.size();
    a.packing_bound = triangle_packing_bound(g, triangles);

    std::vector<Partition> starts;
    if (attrs) {
        if (attrs->size() != g.node_count()) throw std::invalid_argument("attributes do not cover the graph's nodes");
        auto warm = warm_start_partition(*attrs);
        a.warm_start_count = static_cast<std::int64_t>(frustration_count(g, warm));
        starts.push_back(std::move(warm));
    }
    starts.push_back(greedy_partition(g));
    starts.emplace_back(g.node_count(), 0);

    BoundState bounds;
    bounds.upper = std::numeric_limits<std::int64_t>::max();
    for (const auto& s : starts) {
        auto improved = local_search_improve(g, s);
        const auto count = static_cast<std::int64_t>(frustration_count(g, improved));
        if (count < bounds.upper) {
            bounds.upper = count;
            bounds.incumbent = std::move(improved);
        }
    }
    a.heuristic_upper = bounds.upper;

    bounds.lower = static_cast<double>(a.packing_bound);
    bounds.lower_method = LowerBoundMethod::triangle_packing;
    if (options.compute_lp) {
        a.lp = lp_lower_bound(g, triangles, options.bound);
        if (a.lp->value > bounds.lower) {
            bounds.lower = a.lp->value;
            bounds.lower_method = a.lp->method;
        }
    }
    bounds.lower = std::min(bounds.lower, static_cast<double>(bounds.upper));
    a.result = solve_exact(g, bounds, options.solve, &triangles);
    return a;
}

} // namespace signet
