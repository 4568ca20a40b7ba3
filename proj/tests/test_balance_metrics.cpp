#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "signet/balance_metrics.hpp"
#include "signet/io.hpp"
#include "support.hpp"

using namespace signet;

namespace {

SignedGraph complete(std::size_t n, auto sign_of) {
    std::vector<SignedEdge> edges;
    for (NodeIndex i = 0; i < static_cast<NodeIndex>(n); ++i)
        for (NodeIndex j = i + 1; j < static_cast<NodeIndex>(n); ++j) edges.push_back({i, j, sign_of(i, j)});
    return SignedGraph::from_edges(n, edges);
}

} // namespace

TEST_CASE("triangle index on small fixtures", "[balance_metrics]") {
    CHECK(triangle_index(signet::testing::toy5()) == 0.5);
    CHECK(triangle_index(complete(4, [](auto, auto) { return Sign::positive; })) == 1.0);
    const auto k3 = complete(3, [](NodeIndex i, NodeIndex j) { return i == 0 && j == 1 ? Sign::negative : Sign::positive; });
    CHECK(triangle_index(k3) == 0.0);
}

TEST_CASE("triangle index is undefined without triangles", "[balance_metrics]") {
    const auto path = SignedGraph::from_edges(3, std::vector<SignedEdge>{{0, 1, Sign::positive}, {1, 2, Sign::negative}});
    CHECK_THROWS_AS(triangle_index(path), UndefinedError);
    CHECK_THROWS_AS(triangle_index_by_trace(path), UndefinedError);
    const auto report = balance_report(path);
    CHECK_FALSE(report.triangle_index.has_value());
    CHECK(report.triangle_count == 0);
}

TEST_CASE("trace formula agrees with per-triangle counting", "[balance_metrics][property]") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto g = random_signed_graph(10 + seed, 0.4, 0.1 + 0.02 * static_cast<double>(seed), seed);
        const auto c = count_triangle_signs(g);
        if (c.total() == 0) continue;
        const auto t = adjacency_cube_traces(g);
        CHECK(t.unsigned_trace == 6 * static_cast<std::int64_t>(c.total()));
        CHECK(t.signed_trace == 6 * (static_cast<std::int64_t>(c.positive) - static_cast<std::int64_t>(c.negative)));
        const double by_count = triangle_index(g);
        CHECK(std::abs(by_count - triangle_index_by_trace(g)) < 1e-12);
        CHECK(by_count >= 0.0);
        CHECK(by_count <= 1.0);
        CHECK((by_count == 1.0) == (c.negative == 0));
    }
}

TEST_CASE("normalized frustration", "[balance_metrics]") {
    CHECK(std::abs(normalized_frustration(1, 7) - 5.0 / 7.0) < 1e-12);
    CHECK(round_half_up(normalized_frustration(86, 3696), 3) == 0.953);
    CHECK(normalized_frustration(0, 12) == 1.0);
    CHECK_THROWS(normalized_frustration(0, 0));
    CHECK_THROWS(normalized_frustration(8, 7));
    CHECK_THROWS(normalized_frustration(-1, 7));
}

TEST_CASE("half-up rounding", "[balance_metrics]") {
    CHECK(round_half_up(0.0745, 3) == 0.075);
    CHECK(round_half_up(0.5585, 3) == 0.559);
    CHECK(round_half_up(-0.8525, 3) == -0.853);
    CHECK(round_half_up(0.1234, 2) == 0.12);
}

TEST_CASE("published F column follows from L and m", "[balance_metrics][fixtures]") {
    for (const char* file : {"senate_networks.csv", "house_networks.csv"}) {
        const auto rows = io::read_network_table_file(std::string(SIGNET_DATA_DIR) + "/" + file);
        REQUIRE(rows.size() == 19);
        for (const auto& r : rows) {
            INFO(file << " session " << r.session);
            CHECK(round_half_up(normalized_frustration(r.frustration_index, r.m), 3) == Catch::Approx(r.normalized_frustration).margin(1e-12));
            CHECK(r.m == r.m_neg + r.m_pos);
            CHECK(round_half_up(2.0 * static_cast<double>(r.m) / static_cast<double>(r.n * (r.n - 1)), 3) ==
                  Catch::Approx(r.density).margin(1e-12));
        }
    }
}

TEST_CASE("balance report combines triangle and frustration fields", "[balance_metrics]") {
    const auto g = signet::testing::toy5();
    auto r = balance_report(g);
    REQUIRE(r.triangle_index.has_value());
    CHECK(*r.triangle_index == 0.5);
    CHECK(r.triangle_count == 2);
    attach_frustration(r, g, 1, 1.0);
    CHECK(*r.frustration_index == 1);
    CHECK(std::abs(*r.normalized_frustration - 5.0 / 7.0) < 1e-12);
    CHECK(*r.lower_bound == 1.0);
}
