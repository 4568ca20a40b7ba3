// Acceptance run: one PASS/FAIL line per criterion, with wall time against its limit.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "signet/balance_metrics.hpp"
#include "signet/effectiveness_stats.hpp"
#include "signet/frustration_solver.hpp"
#include "signet/generators.hpp"
#include "signet/io.hpp"
#include "signet/sdsm_backbone.hpp"
#include "support.hpp"

using namespace signet;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Accumulates failures; the first few are kept for the report line.
struct Checker {
    Outcome out;
    int failures = 0;
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        out.pass = false;
        if (failures++ < 3) out.detail += (out.detail.empty() ? "" : "; ") + what;
    }
};

int run(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= limit_seconds) {
        o.pass = false;
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time limit");
    }
    std::printf("%s criterion %d: %s (%.2fs, limit %.0fs)%s%s\n", o.pass ? "PASS" : "FAIL", id, title, secs, limit_seconds,
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    return o.pass ? 0 : 1;
}

std::string data(const char* file) { return std::string(SIGNET_DATA_DIR) + "/" + file; }

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// The 200-instance oracle comparison shared by criteria 2 and 3.
Outcome oracle_equivalence() {
    Checker c;
    int instance = 0, equal = 0, sandwiched = 0;
    for (double pe : {0.3, 0.6})
        for (double pn : {0.3, 0.5, 0.7})
            for (int k = 0; k < 34 && instance < 200; ++k, ++instance) {
                const std::size_t n = 3 + static_cast<std::size_t>(instance % 10);
                const auto g = random_signed_graph(n, pe, pn, 50'000 + static_cast<std::uint64_t>(instance));
                const auto oracle = brute_force_oracle(g);
                const auto a = compute_frustration_index(g);
                const auto L = a.result.frustration_index;
                const bool eq = a.result.certified && L == oracle.frustration_index;
                const auto lp = a.lp ? integral_lower_bound(a.lp->value) : -1;
                const bool sw = a.lp && static_cast<std::int64_t>(a.packing_bound) <= lp && lp <= oracle.frustration_index &&
                                oracle.frustration_index <= a.heuristic_upper;
                equal += eq;
                sandwiched += sw;
                c.expect(eq, "instance " + std::to_string(instance) + " L mismatch");
                c.expect(sw, "instance " + std::to_string(instance) + " bound sandwich broken");
            }
    c.expect(instance == 200, "instance count");
    if (c.out.pass) c.out.detail = "L equal " + std::to_string(equal) + "/200, sandwich " + std::to_string(sandwiched) + "/200";
    return c.out;
}

Outcome criterion1() {
    Checker c;
    const auto g = testing::toy5();
    c.expect(triangle_index(g) == 0.5, "T != 0.5");
    const auto a = compute_frustration_index(g);
    c.expect(a.result.certified && a.result.frustration_index == 1, "L != 1");
    const auto want = testing::with_side_one(g, {"4", "5"});
    c.expect(a.result.optimal_partition == want || a.result.optimal_partition == want.complement(), "partition is not {1,2,3 | 4,5}");
    c.expect(near(normalized_frustration(a.result.frustration_index, 7), 5.0 / 7.0, 1e-12), "F != 5/7");
    return c.out;
}

Outcome criterion3() {
    // The public network edge lists are not bundled, so the fallback applies.
    Checker c;
    const auto base = oracle_equivalence();
    c.expect(base.pass, "oracle equivalence: " + base.detail);

    std::mt19937_64 rng(3);
    int switched = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto planted = planted_coalition_graph(100, 0.3, 8, 700 + seed);
        const auto L = compute_frustration_index(planted.graph).result;
        const auto cut = testing::random_partition(100, rng);
        const auto S = compute_frustration_index(switch_signs(planted.graph, cut)).result;
        const bool ok = L.certified && S.certified && L.frustration_index == S.frustration_index &&
                        L.frustration_index <= static_cast<std::int64_t>(planted.flipped_edges);
        switched += ok;
        c.expect(ok, "switching on planted graph " + std::to_string(seed));
    }

    // House-scale instance: the budget runs out and the incumbent is flagged, not claimed optimal.
    const auto big = random_signed_graph(440, 0.5, 0.4, 113);
    FrustrationOptions opt;
    opt.solve.node_budget = 20'000;
    opt.solve.time_budget_seconds = 20.0;
    const auto h = compute_frustration_index(big, nullptr, opt);
    c.expect(!h.result.certified, "house-scale instance claimed certified");
    c.expect(frustration_count(big, h.result.optimal_partition) == static_cast<std::size_t>(h.result.frustration_index),
             "house-scale incumbent count mismatch");
    c.expect(h.result.proof.lower <= static_cast<double>(h.result.frustration_index), "house-scale bounds inverted");

    // Published F follows from published L and m at 3 d.p.
    int rows = 0;
    for (const char* file : {"senate_networks.csv", "house_networks.csv"})
        for (const auto& r : io::read_network_table_file(data(file))) {
            ++rows;
            c.expect(round_half_up(normalized_frustration(r.frustration_index, r.m), 3) == r.normalized_frustration,
                     std::string(file) + " session " + std::to_string(r.session) + " F");
        }

    if (c.out.pass) {
        std::ostringstream s;
        s << "fallback (network edge lists not bundled): " << base.detail << "; switching invariant on " << switched
          << "/5 planted 100-node graphs; n=440 m=" << big.edge_count() << " returned uncertified incumbent L<=" << h.result.frustration_index
          << " lower=" << h.result.proof.lower << "; F from L on " << rows << " published rows";
        c.out.detail = s.str();
    }
    return c.out;
}

struct Series {
    std::vector<double> session, rate, bills, coalition, party;
};

Series series(const char* file) {
    const auto t = io::read_session_table_file(data(file));
    const std::span<const SessionRecord> r = t.records;
    return {session_series(r, [](const auto& s) { return s.session; }), session_series(r, [](const auto& s) { return s.passage_rate; }),
            session_series(r, [](const auto& s) { return s.bills_introduced; }),
            session_series(r, [](const auto& s) { return s.coalition_control; }),
            session_series(r, [](const auto& s) { return s.party_control; })};
}

Outcome criterion4() {
    Checker c;
    const auto house = series("house_sessions.csv");
    const auto senate = series("senate_sessions.csv");
    const double tol = 0.02;
    const auto sb = ols_standardized(senate.rate, std::vector<NamedSeries>{{"session", senate.session}})["session"];
    const auto hb = ols_standardized(house.rate, std::vector<NamedSeries>{{"session", house.session}})["session"];
    c.expect(near(sb.beta, -0.852, tol), "senate beta");
    c.expect(near(hb.beta, -0.528, tol), "house beta");

    const auto pm = mediation_model(house.session, house.coalition, house.rate);
    c.expect(near(pm.a.beta, 0.771, tol), "a");
    c.expect(near(pm.b.beta, 0.661, tol), "b");
    c.expect(near(pm.indirect, 0.510, tol), "indirect");
    c.expect(near(pm.c_direct.beta, -1.038, tol), "direct");
    c.expect(significance_stars(pm.a.p) == "**", "a stars");
    c.expect(significance_stars(pm.b.p) == "*", "b stars");
    c.expect(significance_stars(pm.indirect_p) == "*", "indirect stars");
    c.expect(significance_stars(pm.c_direct.p) == "**", "direct stars");

    for (const auto* s : {&house, &senate}) c.expect(mediation_model(s->session, s->party, s->rate).indirect_p >= 0.05, "party mediation significant");

    c.expect(near(pearson_r(house.rate, house.bills).r, -0.29, tol), "r house rate/bills");
    c.expect(near(pearson_r(senate.rate, senate.bills).r, -0.08, tol), "r senate rate/bills");
    c.expect(near(pearson_r(house.bills, house.session).r, -0.34, tol), "r house bills/session");
    c.expect(near(pearson_r(senate.bills, senate.session).r, 0.19, tol), "r senate bills/session");
    if (c.out.pass) {
        std::ostringstream s;
        s.precision(3);
        s << std::fixed << "beta S=" << sb.beta << " H=" << hb.beta << "; a=" << pm.a.beta << " b=" << pm.b.beta << " ind=" << pm.indirect
          << " dir=" << pm.c_direct.beta;
        c.out.detail = s.str();
    }
    return c.out;
}

Outcome criterion5() {
    Checker c;
    int checked = 0, mismatches = 0;
    for (const char* file : {"senate_sessions.csv", "house_sessions.csv"}) {
        const auto t = io::read_session_table_file(data(file));
        for (std::size_t k = 0; k < t.records.size(); ++k) {
            const auto& r = t.records[k];
            const auto& tab = t.tabulated[k];
            const std::string where = std::string(file) + " session " + std::to_string(r.session);
            const bool pc = tab.party_control && r.party_control == *tab.party_control;
            const bool cc = tab.coalition_control && round_half_up(r.coalition_control, 3) == *tab.coalition_control;
            const bool pr = tab.passage_rate && round_half_up(r.passage_rate, 3) == *tab.passage_rate;
            c.expect(pc, where + " party_control");
            c.expect(cc, where + " coalition_control");
            c.expect(pr, where + " passage_rate");
            mismatches += !pc + !cc + !pr;
            checked += 3;
        }
    }
    c.expect(checked == 114, "expected 38 rows x 3 columns, got " + std::to_string(checked) + " cells");
    c.out.detail = (c.out.pass ? "" : c.out.detail + "; ") + std::to_string(checked) + " cells, " + std::to_string(mismatches) + " mismatches";
    return c.out;
}

Outcome criterion6() {
    Checker c;
    // Monte Carlo law of one joint count against all 2^12 matrices.
    const std::vector<double> p = {0.9, 0.6, 0.3, 0.5, 0.7, 0.2, 0.8, 0.4, 0.1, 0.55, 0.35, 0.65};
    std::vector<double> exact(5, 0.0);
    for (unsigned mask = 0; mask < (1U << 12); ++mask) {
        double w = 1.0;
        for (unsigned k = 0; k < 12; ++k) w *= (mask >> k) & 1U ? p[k] : 1.0 - p[k];
        int joint = 0;
        for (unsigned j = 0; j < 4; ++j) joint += static_cast<int>(((mask >> j) & 1U) & ((mask >> (4 + j)) & 1U));
        exact[static_cast<std::size_t>(joint)] += w;
    }
    const auto b3 = BipartiteGraph::from_matrix({{1, 0, 1, 0}, {0, 1, 1, 0}, {1, 1, 0, 1}});
    SamplingOptions so;
    so.replicates = 50'000;
    so.seed = 2024;
    const std::vector<NodePair> pair{{0, 1}};
    const auto sampled = sample_null_projection(NullModel::from_probabilities(3, 4, p), b3, pair, so);
    double tv = 0.0;
    for (std::size_t k = 0; k < exact.size(); ++k) tv += std::abs(static_cast<double>(sampled.pairs[0].histogram[k]) / 50'000.0 - exact[k]);
    tv *= 0.5;
    c.expect(tv < 0.02, "TV " + std::to_string(tv));

    // Planted two-block sponsorship matrix.
    std::mt19937_64 rng(8);
    std::vector<std::vector<int>> cells(24, std::vector<int>(40));
    for (std::size_t i = 0; i < 24; ++i)
        for (std::size_t j = 0; j < 40; ++j)
            cells[i][j] = unit_uniform(rng) < (((i < 12) == (j < 20)) ? 0.7 : 0.15);
    const auto b = BipartiteGraph::from_matrix(cells);
    const auto m = fit_cell_probabilities(b);
    SamplingOptions opt;
    opt.replicates = 5000;
    opt.seed = 77;
    const auto pairs = all_pairs(24);
    const auto one = sample_null_projection(m, b, pairs, opt);
    auto subset = [](const SignedGraph& a, const SignedGraph& z) {
        for (const auto& e : a.edges())
            if (z.adjacency(e.u, e.v) != to_int(e.sign)) return false;
        return true;
    };
    const auto g01 = extract_signed_backbone(b, one, 0.01);
    const auto g05 = extract_signed_backbone(b, one, 0.05);
    const auto g10 = extract_signed_backbone(b, one, 0.10);
    c.expect(subset(g01, g05) && subset(g05, g10), "alpha monotonicity");

    bool identical = true;
    for (unsigned threads : {2U, 8U}) {
        opt.threads = threads;
        const auto many = sample_null_projection(m, b, pairs, opt);
        for (std::size_t k = 0; k < pairs.size(); ++k) identical &= many.pairs[k].histogram == one.pairs[k].histogram;
        identical &= extract_signed_backbone(b, many, 0.05) == g05;
    }
    c.expect(identical, "worker count changed the result");
    if (c.out.pass) {
        std::ostringstream s;
        s << "TV=" << tv << "; edges at alpha .01/.05/.10: " << g01.edge_count() << "/" << g05.edge_count() << "/" << g10.edge_count()
          << "; identical across 1, 2, 8 workers";
        c.out.detail = s.str();
    }
    return c.out;
}

Outcome criterion7() {
    Checker c;
    std::mt19937_64 rng(7);
    int above_positive = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 5 + seed % 8;
        const double pn = 0.3 + 0.2 * static_cast<double>(seed % 3);
        const auto g = random_signed_graph(n, 0.5, pn, 80'000 + seed);
        const std::string tag = "fixture " + std::to_string(seed);
        const auto base = compute_frustration_index(g).result;
        c.expect(base.certified, tag + " not certified");
        const auto L = base.frustration_index;

        const auto cut = testing::random_partition(n, rng);
        c.expect(compute_frustration_index(switch_signs(g, cut)).result.frustration_index == L, tag + " switching");
        c.expect(frustration_count(g, base.optimal_partition.complement()) == static_cast<std::size_t>(L), tag + " complement");
        c.expect(compute_frustration_index(testing::permute(g, testing::random_permutation(n, rng))).result.frustration_index == L,
                 tag + " permutation");
        c.expect(L <= static_cast<std::int64_t>(g.negative_edge_count()), tag + " L > m-");
        c.expect(2 * L <= static_cast<std::int64_t>(g.edge_count()), tag + " L > m/2");
        if (L > static_cast<std::int64_t>(g.positive_edge_count())) {
            // L <= m+ is not a valid bound; confirm each exceedance with the brute-force oracle.
            c.expect(brute_force_oracle(g).frustration_index == L, tag + " oracle disagrees");
            ++above_positive;
        }
        if (!enumerate_triangles(g).empty())
            c.expect(std::abs(triangle_index(g) - triangle_index_by_trace(g)) < 1e-12, tag + " trace cross-check");
    }
    if (c.out.pass)
        c.out.detail = "100 fixtures; L <= m- and L <= m/2 hold; L <= m+ is not a valid bound and was exceeded (oracle-confirmed) on " +
                       std::to_string(above_positive) + " fixtures";
    return c.out;
}

} // namespace

int main() {
    int failed = 0;
    failed += run(1, "toy fixture", 1, criterion1);
    failed += run(2, "oracle equivalence on 200 random graphs", 120, oracle_equivalence);
    failed += run(3, "network reproduction", 1800, criterion3);
    failed += run(4, "statistics reproduction", 5, criterion4);
    failed += run(5, "derived columns", 5, criterion5);
    failed += run(6, "null model properties", 60, criterion6);
    failed += run(7, "invariant suite", 60, criterion7);
    std::printf("%d of 7 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
