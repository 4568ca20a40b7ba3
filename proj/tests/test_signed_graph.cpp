#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "signet/frustration_solver.hpp"
#include "signet/signed_graph.hpp"
#include "support.hpp"

using namespace signet;
using signet::testing::toy5;
using signet::testing::with_side_one;

TEST_CASE("edge list construction counts nodes and signs", "[signed_core]") {
    const auto g = toy5();
    CHECK(g.node_count() == 5);
    CHECK(g.edge_count() == 7);
    CHECK(g.positive_edge_count() == 4);
    CHECK(g.negative_edge_count() == 3);
    CHECK(g.density() == Catch::Approx(14.0 / 20.0));
    // first-appearance order
    CHECK(g.node_ids() == std::vector<std::string>{"1", "3", "2", "5", "4"});
}

TEST_CASE("signed adjacency is symmetric and matches edge signs", "[signed_core]") {
    const auto g = toy5();
    const auto idx = [&](const char* id) { return *g.index_of(id); };
    CHECK(g.adjacency(idx("1"), idx("4")) == -1);
    CHECK(g.adjacency(idx("4"), idx("1")) == -1);
    CHECK(g.adjacency(idx("1"), idx("5")) == 1);
    CHECK(g.adjacency(idx("2"), idx("4")) == 0);
    for (NodeIndex u = 0; u < 5; ++u)
        for (NodeIndex v = 0; v < 5; ++v) CHECK(g.adjacency(u, v) == g.adjacency(v, u));
}

TEST_CASE("edge list construction rejects malformed input", "[signed_core]") {
    CHECK_THROWS_AS(SignedGraph::from_edge_list(std::vector<EdgeRow>{}), Error);
    CHECK_THROWS_WITH(SignedGraph::from_edge_list(std::vector<EdgeRow>{{"a", "b", 1}, {"a", "b", -1}}),
                      Catch::Matchers::ContainsSubstring("conflicting signs for edge (a, b)"));
    CHECK_THROWS_WITH(SignedGraph::from_edge_list(std::vector<EdgeRow>{{"a", "b", 1}, {"b", "a", 1}}),
                      Catch::Matchers::ContainsSubstring("duplicate edge"));
    CHECK_THROWS_WITH(SignedGraph::from_edge_list(std::vector<EdgeRow>{{"a", "a", 1}}),
                      Catch::Matchers::ContainsSubstring("self-loop"));
    CHECK_THROWS(SignedGraph::from_edge_list(std::vector<EdgeRow>{{"a", "b", 0}}));
    CHECK_THROWS(SignedGraph::from_edge_list(std::vector<EdgeRow>{{"", "b", 1}}));
}

TEST_CASE("declared nodes may be isolated", "[signed_core]") {
    const std::vector<std::string> declared = {"x", "y", "z"};
    const auto g = SignedGraph::from_edge_list(std::vector<EdgeRow>{{"y", "z", -1}}, declared);
    CHECK(g.node_count() == 3);
    CHECK(g.degree(0) == 0);
    const auto check = is_balanced(g);
    REQUIRE(check.balanced);
    CHECK((*check.witness)[0] == 0);
}

TEST_CASE("triangle enumeration", "[signed_core]") {
    SECTION("toy fixture has triangles 1-3-4 and 1-4-5") {
        const auto g = toy5();
        const auto t = enumerate_triangles(g);
        REQUIRE(t.size() == 2);
        std::set<std::set<std::string>> labelled;
        for (const auto& tri : t) labelled.insert({g.node_id(tri.i), g.node_id(tri.j), g.node_id(tri.k)});
        CHECK(labelled == std::set<std::set<std::string>>{{"1", "3", "4"}, {"1", "4", "5"}});
        for (const auto& tri : t) {
            CHECK(tri.i < tri.j);
            CHECK(tri.j < tri.k);
            CHECK(g.find_edge(tri.i, tri.j) == tri.ij);
            CHECK(g.find_edge(tri.i, tri.k) == tri.ik);
            CHECK(g.find_edge(tri.j, tri.k) == tri.jk);
        }
    }
    SECTION("edgeless graph") {
        const auto g = SignedGraph::from_edges(4, std::vector<SignedEdge>{});
        CHECK(enumerate_triangles(g).empty());
    }
    SECTION("complete graph on five nodes") {
        std::vector<SignedEdge> edges;
        for (NodeIndex i = 0; i < 5; ++i)
            for (NodeIndex j = i + 1; j < 5; ++j) edges.push_back({i, j, (i + j) % 2 ? Sign::negative : Sign::positive});
        CHECK(enumerate_triangles(SignedGraph::from_edges(5, edges)).size() == 10);
    }
    SECTION("matches a naive triple scan on random graphs, in lexicographic order") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto g = random_signed_graph(25, 0.35, 0.5, seed);
            const auto fast = enumerate_triangles(g);
            const auto naive = signet::testing::naive_triangles(g);
            REQUIRE(fast.size() == naive.size());
            for (std::size_t k = 0; k < naive.size(); ++k) {
                CHECK(fast[k].i == naive[k][0]);
                CHECK(fast[k].j == naive[k][1]);
                CHECK(fast[k].k == naive[k][2]);
            }
        }
    }
}

TEST_CASE("frustration state follows the four edge cases", "[signed_core]") {
    const auto g = toy5();
    const auto p = with_side_one(g, {"4", "5"});
    const auto idx = [&](const char* id) { return *g.index_of(id); };
    CHECK(frustration_state(g, p, idx("1"), idx("5")) == 1); // positive, crossing
    CHECK(frustration_state(g, p, idx("1"), idx("4")) == 0); // negative, crossing
    CHECK(frustration_state(g, p, idx("1"), idx("3")) == 0); // positive, same side
    CHECK(frustration_state(g, Partition(5, 0), idx("1"), idx("4")) == 1); // negative, same side
    CHECK_THROWS_AS(frustration_state(g, p, idx("2"), idx("4")), std::invalid_argument);
}

TEST_CASE("frustration count", "[signed_core]") {
    const auto g = toy5();
    CHECK(frustration_count(g, with_side_one(g, {"4", "5"})) == 1);
    CHECK(frustration_count(g, Partition(5, 0)) == g.negative_edge_count());
    CHECK(frustration_count(g, with_side_one(g, {"2", "3", "4", "5"})) == 4);
    CHECK_THROWS_AS(frustration_count(g, Partition(4, 0)), std::invalid_argument);
}

TEST_CASE("balance detection", "[signed_core]") {
    CHECK_FALSE(is_balanced(toy5()).balanced);

    const auto positive = random_signed_graph(12, 1.0, 0.0, 3);
    const auto pos = is_balanced(positive);
    REQUIRE(pos.balanced);
    CHECK(*pos.witness == Partition(12, 0));

    const auto single = SignedGraph::from_edges(2, std::vector<SignedEdge>{{0, 1, Sign::negative}});
    const auto one = is_balanced(single);
    REQUIRE(one.balanced);
    CHECK((*one.witness)[0] != (*one.witness)[1]);
}

TEST_CASE("balance agrees with brute-force minimum frustration", "[signed_core][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto g = random_signed_graph(4 + seed % 9, 0.4, seed % 3 == 0 ? 0.05 : 0.5, 100 + seed);
        const auto check = is_balanced(g);
        const auto oracle = brute_force_oracle(g);
        CHECK(check.balanced == (oracle.frustration_index == 0));
        if (check.balanced) CHECK(frustration_count(g, *check.witness) == 0);
    }
}

TEST_CASE("switching", "[signed_core]") {
    const auto g = toy5();
    CHECK(switch_signs(g, Partition(5, 0)) == g);
    std::mt19937_64 rng(9);
    for (int k = 0; k < 10; ++k) {
        const auto c = signet::testing::random_partition(5, rng);
        CHECK(switch_signs(switch_signs(g, c), c) == g);
    }
    const auto switched = switch_signs(g, with_side_one(g, {"4", "5"}));
    const auto check = is_balanced(switched);
    CHECK_FALSE(check.balanced); // one frustrated edge remains
    CHECK(brute_force_oracle(switched).frustration_index == 1);
    // Switching by the optimal split turns the frustrated edges into the only negative edges.
    CHECK(switched.negative_edge_count() == 1);
    CHECK(frustration_count(switched, Partition(5, 0)) == 1);
}

TEST_CASE("frustration count invariants", "[signed_core][property]") {
    std::mt19937_64 rng(2024);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t n = 3 + seed % 15;
        const auto g = random_signed_graph(n, 0.5, 0.4, seed);
        const auto p = signet::testing::random_partition(n, rng);
        CHECK(frustration_count(g, p) == frustration_count(g, p.complement()));
        CHECK(frustration_count(g, Partition(n, 0)) == g.negative_edge_count());
        const auto perm = signet::testing::random_permutation(n, rng);
        const auto h = signet::testing::permute(g, perm);
        Partition q(n, 0);
        for (std::size_t i = 0; i < n; ++i) q.set(static_cast<std::size_t>(perm[i]), p[i]);
        CHECK(frustration_count(h, q) == frustration_count(g, p));
        // switching moves frustration with the cut
        const auto c = signet::testing::random_partition(n, rng);
        Partition moved(n, 0);
        for (std::size_t i = 0; i < n; ++i) moved.set(i, p[i] ^ c[i]);
        CHECK(frustration_count(switch_signs(g, c), moved) == frustration_count(g, p));
    }
}
