// Synthetic chamber: two parties sponsor mostly their own bills. Extract the signed backbone,
// find the optimal two-coalition split and report how partisan the controlling coalition is.
//
//   planted_coalitions [legislators] [bills] [seed]

#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

#include "signet/balance_metrics.hpp"
#include "signet/effectiveness_stats.hpp"
#include "signet/frustration_solver.hpp"
#include "signet/generators.hpp"
#include "signet/sdsm_backbone.hpp"

using namespace signet;

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 30;
    const std::size_t bills = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 80;
    const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1;

    std::mt19937_64 rng(seed);
    NodeAttributes attrs(n);
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = "L" + std::to_string(i);
        attrs.set_party(i, i < n * 11 / 20 ? Party::democrat : Party::republican);
    }
    // Bills are written by one party; members sponsor their own party's bills more often.
    std::vector<std::vector<int>> cells(n, std::vector<int>(bills));
    for (std::size_t j = 0; j < bills; ++j) {
        const bool dem_bill = unit_uniform(rng) < 0.5;
        for (std::size_t i = 0; i < n; ++i) {
            const bool same = (attrs.party(i) == Party::democrat) == dem_bill;
            cells[i][j] = unit_uniform(rng) < (same ? 0.55 : 0.12);
        }
    }
    std::vector<std::string> bill_ids(bills);
    for (std::size_t j = 0; j < bills; ++j) bill_ids[j] = "B" + std::to_string(j);
    const auto b = BipartiteGraph::from_matrix(cells, ids, bill_ids);

    SamplingOptions opt;
    opt.replicates = 2000;
    opt.seed = seed;
    const auto dists = sample_null_projection(fit_cell_probabilities(b), b, all_pairs(n), opt);
    const auto g = extract_signed_backbone(b, dists, 0.05);
    std::printf("backbone: n=%zu m=%zu (+%zu, -%zu)\n", g.node_count(), g.edge_count(), g.positive_edge_count(),
                g.negative_edge_count());
    if (g.edge_count() == 0) return 0;

    const auto a = compute_frustration_index(g, &attrs);
    const auto& r = a.result;
    std::printf("L=%lld F=%.3f certified=%s (party split frustrates %lld)\n", static_cast<long long>(r.frustration_index),
                normalized_frustration(r.frustration_index, static_cast<std::int64_t>(g.edge_count())), r.certified ? "yes" : "no",
                static_cast<long long>(*a.warm_start_count));
    if (!enumerate_triangles(g).empty()) std::printf("T=%.3f\n", triangle_index(g));

    const auto cc = coalition_partisanship(r.optimal_partition, attrs);
    std::printf("controlling coalition: %lld members (%lld D, %lld R), coalition control %.3f\n", static_cast<long long>(cc.size),
                static_cast<long long>(cc.dems), static_cast<long long>(cc.reps), cc.control);
}
