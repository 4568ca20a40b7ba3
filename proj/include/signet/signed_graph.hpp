#pragma once

// Signed graphs, two-way partitions, triangles and frustration accounting.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "signet/errors.hpp"

namespace signet {

using NodeIndex = std::int32_t;
using EdgeIndex = std::int32_t;

enum class Sign : std::int8_t { negative = -1, positive = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }

constexpr Sign operator*(Sign a, Sign b) noexcept {
    return a == b ? Sign::positive : Sign::negative;
}

constexpr Sign operator-(Sign s) noexcept {
    return s == Sign::positive ? Sign::negative : Sign::positive;
}

inline Sign sign_from_int(int v) {
    if (v == 1) return Sign::positive;
    if (v == -1) return Sign::negative;
    throw std::invalid_argument("edge sign must be -1 or +1, got " + std::to_string(v));
}

/// Undirected signed edge, stored with u < v.
struct SignedEdge {
    NodeIndex u = 0;
    NodeIndex v = 0;
    Sign sign = Sign::positive;

    friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

/// One row of a signed edge list keyed by node identifiers.
struct EdgeRow {
    std::string source;
    std::string target;
    int sign = 1;
};

struct Neighbor {
    NodeIndex node;
    Sign sign;
    EdgeIndex edge;
};

/// Binary node assignment {X, V\X}; side 1 means membership in X.
class Partition {
  public:
    Partition() = default;

    explicit Partition(std::size_t n, std::uint8_t side = 0) : sides_(n, check(side)) {}

    explicit Partition(std::vector<std::uint8_t> sides) : sides_(std::move(sides)) {
        for (auto s : sides_) check(s);
    }

    std::size_t size() const noexcept { return sides_.size(); }
    std::uint8_t operator[](std::size_t i) const { return sides_[i]; }
    void set(std::size_t i, std::uint8_t side) { sides_.at(i) = check(side); }
    void flip(std::size_t i) { sides_.at(i) ^= 1U; }
    std::span<const std::uint8_t> sides() const noexcept { return sides_; }

    Partition complement() const {
        Partition c = *this;
        for (auto& s : c.sides_) s ^= 1U;
        return c;
    }

    std::size_t count(std::uint8_t side) const {
        return static_cast<std::size_t>(std::count(sides_.begin(), sides_.end(), side));
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

  private:
    static std::uint8_t check(std::uint8_t s) {
        if (s > 1) throw std::invalid_argument("partition sides must be 0 or 1");
        return s;
    }

    std::vector<std::uint8_t> sides_;
};

enum class Party : std::uint8_t { democrat, republican, independent };

/// Accepts the one-letter codes D/R/I as well as full party names (case-insensitive).
inline std::optional<Party> parse_party(std::string_view text) {
    std::string s;
    for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "d" || s == "democrat" || s == "democratic") return Party::democrat;
    if (s == "r" || s == "republican") return Party::republican;
    if (s == "i" || s == "independent") return Party::independent;
    return std::nullopt;
}

constexpr char party_code(Party p) noexcept {
    switch (p) {
    case Party::democrat: return 'D';
    case Party::republican: return 'R';
    case Party::independent: return 'I';
    }
    return '?';
}

/// Per-node party labels plus optional free-form metadata (state, chamber, ...).
class NodeAttributes {
  public:
    NodeAttributes() = default;
    explicit NodeAttributes(std::size_t n) : party_(n), metadata_(n) {}

    NodeAttributes(std::initializer_list<Party> parties) : party_(parties.begin(), parties.end()), metadata_(parties.size()) {}

    std::size_t size() const noexcept { return party_.size(); }
    std::optional<Party> party(std::size_t i) const { return party_.at(i); }
    void set_party(std::size_t i, Party p) { party_.at(i) = p; }

    bool covers_all() const {
        return std::all_of(party_.begin(), party_.end(), [](const auto& p) { return p.has_value(); });
    }

    std::map<std::string, std::string>& metadata(std::size_t i) { return metadata_.at(i); }
    const std::map<std::string, std::string>& metadata(std::size_t i) const { return metadata_.at(i); }

  private:
    std::vector<std::optional<Party>> party_;
    std::vector<std::map<std::string, std::string>> metadata_;
};

/// Undirected simple graph with +1/-1 edge signs. Immutable after construction.
class SignedGraph {
  public:
    SignedGraph() = default;

    /// Builds a graph from identifier-keyed rows. Nodes are indexed by first appearance;
    /// `declared` nodes (e.g. isolated legislators) are indexed first, in the given order.
    static SignedGraph from_edge_list(std::span<const EdgeRow> rows, std::span<const std::string> declared = {}) {
        SignedGraph g;
        auto intern = [&](const std::string& id) {
            if (id.empty()) throw Error("node identifiers must be nonempty");
            auto [it, inserted] = g.index_.try_emplace(id, static_cast<NodeIndex>(g.ids_.size()));
            if (inserted) g.ids_.push_back(id);
            return it->second;
        };
        for (const auto& id : declared) intern(id);
        std::vector<SignedEdge> edges;
        edges.reserve(rows.size());
        for (const auto& row : rows) {
            const NodeIndex a = intern(row.source);
            const NodeIndex b = intern(row.target);
            edges.push_back(make_edge(a, b, sign_from_int(row.sign)));
        }
        if (g.ids_.empty()) throw Error("graph must contain at least one node");
        g.assign_edges(std::move(edges));
        return g;
    }

    /// Builds a graph over nodes 0..ids.size()-1 from index-keyed edges.
    static SignedGraph from_edges(std::vector<std::string> ids, std::span<const SignedEdge> edges) {
        if (ids.empty()) throw Error("graph must contain at least one node");
        SignedGraph g;
        g.ids_ = std::move(ids);
        for (std::size_t i = 0; i < g.ids_.size(); ++i) {
            const auto& id = g.ids_[i];
            if (id.empty()) throw Error("node identifiers must be nonempty");
            if (!g.index_.emplace(id, static_cast<NodeIndex>(i)).second)
                throw Error("duplicate node identifier '" + id + "'");
        }
        std::vector<SignedEdge> normalized;
        normalized.reserve(edges.size());
        const auto n = static_cast<NodeIndex>(g.ids_.size());
        for (const auto& e : edges) {
            if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw Error("edge endpoint out of range");
            normalized.push_back(make_edge(e.u, e.v, e.sign));
        }
        g.assign_edges(std::move(normalized));
        return g;
    }

    /// Graph over n nodes labelled "0".."n-1".
    static SignedGraph from_edges(std::size_t n, std::span<const SignedEdge> edges) {
        std::vector<std::string> ids;
        ids.reserve(n);
        for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
        return from_edges(std::move(ids), edges);
    }

    std::size_t node_count() const noexcept { return ids_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t positive_edge_count() const noexcept { return edges_.size() - negative_count_; }
    std::size_t negative_edge_count() const noexcept { return negative_count_; }

    /// 2m / (n(n-1)); zero for a single node.
    double density() const noexcept {
        const double n = static_cast<double>(node_count());
        return n < 2 ? 0.0 : 2.0 * static_cast<double>(edge_count()) / (n * (n - 1.0));
    }

    const std::vector<std::string>& node_ids() const noexcept { return ids_; }
    const std::string& node_id(NodeIndex i) const { return ids_.at(static_cast<std::size_t>(i)); }

    std::optional<NodeIndex> index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::span<const SignedEdge> edges() const noexcept { return edges_; }
    const SignedEdge& edge(EdgeIndex e) const { return edges_.at(static_cast<std::size_t>(e)); }

    /// Neighbors of u sorted by node index.
    std::span<const Neighbor> neighbors(NodeIndex u) const {
        const auto b = offsets_.at(static_cast<std::size_t>(u));
        const auto e = offsets_.at(static_cast<std::size_t>(u) + 1);
        return std::span<const Neighbor>(adjacency_).subspan(b, e - b);
    }

    std::size_t degree(NodeIndex u) const { return neighbors(u).size(); }

    std::optional<EdgeIndex> find_edge(NodeIndex u, NodeIndex v) const {
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= node_count() || static_cast<std::size_t>(v) >= node_count())
            return std::nullopt;
        const auto nb = neighbors(u);
        auto it = std::lower_bound(nb.begin(), nb.end(), v, [](const Neighbor& a, NodeIndex x) { return a.node < x; });
        if (it == nb.end() || it->node != v) return std::nullopt;
        return it->edge;
    }

    /// Signed adjacency entry a_uv: the edge sign, or 0 when (u,v) is not an edge.
    int adjacency(NodeIndex u, NodeIndex v) const {
        const auto e = find_edge(u, v);
        return e ? to_int(edges_[static_cast<std::size_t>(*e)].sign) : 0;
    }

    friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
        return a.ids_ == b.ids_ && a.edges_ == b.edges_;
    }

  private:
    static SignedEdge make_edge(NodeIndex a, NodeIndex b, Sign s) {
        if (a == b) throw Error("self-loop on node index " + std::to_string(a) + " is not allowed");
        return a < b ? SignedEdge{a, b, s} : SignedEdge{b, a, s};
    }

    void assign_edges(std::vector<SignedEdge> edges) {
        std::unordered_map<std::uint64_t, Sign> seen;
        seen.reserve(edges.size() * 2);
        for (const auto& e : edges) {
            const auto key = (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
            auto [it, inserted] = seen.emplace(key, e.sign);
            if (!inserted) {
                const std::string pair = "(" + ids_[e.u] + ", " + ids_[e.v] + ")";
                if (it->second != e.sign) throw Error("conflicting signs for edge " + pair);
                throw Error("duplicate edge " + pair);
            }
        }
        edges_ = std::move(edges);
        negative_count_ = static_cast<std::size_t>(
            std::count_if(edges_.begin(), edges_.end(), [](const SignedEdge& e) { return e.sign == Sign::negative; }));

        const std::size_t n = ids_.size();
        offsets_.assign(n + 1, 0);
        for (const auto& e : edges_) {
            ++offsets_[static_cast<std::size_t>(e.u) + 1];
            ++offsets_[static_cast<std::size_t>(e.v) + 1];
        }
        for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
        adjacency_.resize(2 * edges_.size());
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            const auto& e = edges_[k];
            const auto idx = static_cast<EdgeIndex>(k);
            adjacency_[fill[static_cast<std::size_t>(e.u)]++] = Neighbor{e.v, e.sign, idx};
            adjacency_[fill[static_cast<std::size_t>(e.v)]++] = Neighbor{e.u, e.sign, idx};
        }
        for (std::size_t i = 0; i < n; ++i)
            std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                      adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
                      [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }

    std::vector<std::string> ids_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<SignedEdge> edges_;
    std::size_t negative_count_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> adjacency_;
};

// ---------------------------------------------------------------------------
// Triangles

struct Triangle {
    NodeIndex i, j, k;    // i < j < k
    EdgeIndex ij, ik, jk; // edge indices of the three sides

    friend bool operator==(const Triangle&, const Triangle&) = default;
};

/// Calls f(const Triangle&) for every triangle in lexicographic (i, j, k) order.
/// Uses merge-intersection of sorted higher-neighbor lists.
template <typename F>
void for_each_triangle(const SignedGraph& g, F&& f) {
    const auto n = static_cast<NodeIndex>(g.node_count());
    for (NodeIndex i = 0; i < n; ++i) {
        const auto ni = g.neighbors(i);
        auto hi = std::lower_bound(ni.begin(), ni.end(), i, [](const Neighbor& a, NodeIndex x) { return a.node < x; });
        for (auto a = hi; a != ni.end(); ++a) {
            const NodeIndex j = a->node;
            const auto nj = g.neighbors(j);
            auto p = std::next(a);
            auto q = std::upper_bound(nj.begin(), nj.end(), j, [](NodeIndex x, const Neighbor& b) { return x < b.node; });
            while (p != ni.end() && q != nj.end()) {
                if (p->node < q->node) {
                    ++p;
                } else if (q->node < p->node) {
                    ++q;
                } else {
                    f(Triangle{i, j, p->node, a->edge, p->edge, q->edge});
                    ++p;
                    ++q;
                }
            }
        }
    }
}

inline Sign triangle_sign(const SignedGraph& g, const Triangle& t) {
    return g.edge(t.ij).sign * g.edge(t.ik).sign * g.edge(t.jk).sign;
}

/// Ordered list of triangles; immutable after construction.
class TriangleSet {
  public:
    TriangleSet() = default;
    explicit TriangleSet(std::vector<Triangle> t) : triangles_(std::move(t)) {}

    std::size_t size() const noexcept { return triangles_.size(); }
    bool empty() const noexcept { return triangles_.empty(); }
    const Triangle& operator[](std::size_t i) const { return triangles_[i]; }
    auto begin() const noexcept { return triangles_.begin(); }
    auto end() const noexcept { return triangles_.end(); }
    std::span<const Triangle> view() const noexcept { return triangles_; }

  private:
    std::vector<Triangle> triangles_;
};

inline TriangleSet enumerate_triangles(const SignedGraph& g) {
    std::vector<Triangle> out;
    for_each_triangle(g, [&](const Triangle& t) { out.push_back(t); });
    return TriangleSet(std::move(out));
}

/// Keeps only the triangles for which keep(g, t) holds.
template <typename Pred>
TriangleSet enumerate_triangles(const SignedGraph& g, Pred&& keep) {
    std::vector<Triangle> out;
    for_each_triangle(g, [&](const Triangle& t) {
        if (keep(g, t)) out.push_back(t);
    });
    return TriangleSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Frustration

/// Positive edges are frustrated across the cut, negative edges within a group.
constexpr bool is_frustrated(Sign s, std::uint8_t xu, std::uint8_t xv) noexcept {
    return (s == Sign::positive) == (xu != xv);
}

inline void require_partition_size(const SignedGraph& g, const Partition& p) {
    if (p.size() != g.node_count())
        throw std::invalid_argument("partition has " + std::to_string(p.size()) + " entries but graph has " +
                                    std::to_string(g.node_count()) + " nodes");
}

inline int frustration_state(const SignedGraph& g, const Partition& p, NodeIndex u, NodeIndex v) {
    require_partition_size(g, p);
    const auto e = g.find_edge(u, v);
    if (!e) throw std::invalid_argument("no edge between node indices " + std::to_string(u) + " and " + std::to_string(v));
    return is_frustrated(g.edge(*e).sign, p[static_cast<std::size_t>(u)], p[static_cast<std::size_t>(v)]) ? 1 : 0;
}

/// f_G(X): number of frustrated edges under partition p.
inline std::size_t frustration_count(const SignedGraph& g, const Partition& p) {
    require_partition_size(g, p);
    std::size_t count = 0;
    for (const auto& e : g.edges())
        count += is_frustrated(e.sign, p[static_cast<std::size_t>(e.u)], p[static_cast<std::size_t>(e.v)]) ? 1 : 0;
    return count;
}

struct BalanceCheck {
    bool balanced = false;
    std::optional<Partition> witness; // zero-frustration partition when balanced
};

/// Two-colouring propagation: positive edges keep the side, negative edges switch it.
/// Each component's lowest-index node is placed on side 0.
inline BalanceCheck is_balanced(const SignedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<int> side(n, -1);
    std::deque<NodeIndex> queue;
    for (std::size_t root = 0; root < n; ++root) {
        if (side[root] >= 0) continue;
        side[root] = 0;
        queue.push_back(static_cast<NodeIndex>(root));
        while (!queue.empty()) {
            const NodeIndex u = queue.front();
            queue.pop_front();
            for (const auto& nb : g.neighbors(u)) {
                const int want = nb.sign == Sign::positive ? side[u] : 1 - side[u];
                if (side[nb.node] < 0) {
                    side[nb.node] = want;
                    queue.push_back(nb.node);
                } else if (side[nb.node] != want) {
                    return {false, std::nullopt};
                }
            }
        }
    }
    std::vector<std::uint8_t> sides(side.begin(), side.end());
    return {true, Partition(std::move(sides))};
}

/// Negates the sign of every edge crossing the cut.
inline SignedGraph switch_signs(const SignedGraph& g, const Partition& cut) {
    require_partition_size(g, cut);
    std::vector<SignedEdge> edges(g.edges().begin(), g.edges().end());
    for (auto& e : edges)
        if (cut[static_cast<std::size_t>(e.u)] != cut[static_cast<std::size_t>(e.v)]) e.sign = -e.sign;
    return SignedGraph::from_edges(g.node_ids(), edges);
}

} // namespace signet
