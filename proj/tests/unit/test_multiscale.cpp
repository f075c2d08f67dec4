#include <gtest/gtest.h>

#include <cmath>

#include "distmod/error.hpp"
#include "distmod/modularity.hpp"
#include "distmod/multiscale.hpp"
#include "test_support.hpp"

namespace distmod {
namespace {

TEST(SigmaGrid, LogEndpointsAndMonotone) {
    DistanceMatrix d = distance_hop(testing::path3());
    auto grid = sigma_grid(d, 5);
    ASSERT_EQ(grid.size(), 5u);
    EXPECT_EQ(grid.front(), 0.1);
    EXPECT_EQ(grid.back(), 20.0);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        EXPECT_GT(grid[k], grid[k - 1]);
        EXPECT_NEAR(grid[k] / grid[k - 1], std::pow(200.0, 0.25), 1e-12);
    }
}

TEST(SigmaGrid, LinearSpacing) {
    DistanceMatrix d = distance_hop(testing::path3());
    auto grid = sigma_grid(d, 3, GridScale::Linear);
    ASSERT_EQ(grid.size(), 3u);
    EXPECT_EQ(grid[0], 0.1);
    EXPECT_NEAR(grid[1], 10.05, 1e-12);
    EXPECT_EQ(grid[2], 20.0);
}

TEST(SigmaGrid, Errors) {
    DistanceMatrix d = distance_hop(testing::path3());
    EXPECT_THROW(sigma_grid(d, 1), ValidationError);
    GraphBuilder b(2);
    EXPECT_THROW(sigma_grid(distance_hop(b.build()), 4), ValidationError);
}

TEST(Sweep, RejectsNonIncreasingGrid) {
    Graph g = testing::two_triangles();
    DistanceMatrix d = distance_hop(g);
    PowerSpec p = make_power_spec(g, PowerKind::Degree);
    EXPECT_THROW(sweep(g, d, p, DistanceFunction::gaussian_power(1.0), {1.0, 1.0}), ValidationError);
    EXPECT_THROW(sweep(g, d, p, DistanceFunction::gaussian_power(1.0), {}), ValidationError);
}

TEST(Sweep, ExtremesMatchLimits) {
    Graph g = testing::ring_of_cliques(5, 4);
    DistanceMatrix d = distance_hop(g);
    PowerSpec p = make_power_spec(g, PowerKind::Degree);
    auto grid = sigma_grid(d, 8);
    grid.back() = 1e4;
    SweepResult r = sweep(g, d, p, DistanceFunction::gaussian_power(2.0), grid);
    ASSERT_EQ(r.records.size(), 8u);
    EXPECT_FALSE(r.records.front().nmi_prev.has_value());
    for (std::size_t k = 1; k < r.records.size(); ++k) EXPECT_TRUE(r.records[k].nmi_prev.has_value());

    // Smallest sigma: every edge stays inside a community and Q vanishes.
    const auto& first = r.records.front();
    EXPECT_TRUE(connected_components(g).refines(first.partition));
    EXPECT_NEAR(first.q, 0.0, 1e-6);

    // Largest sigma: the constant-f reference.
    const auto& last = r.records.back();
    EXPECT_EQ(last.partition, r.ng_reference);
    EXPECT_NEAR(last.q, r.ng_q, 1e-6);
    EXPECT_EQ(last.nmi_ng, 1.0);
    EXPECT_EQ(r.ng_reference.community_count(), 5u);
}

TEST(Sweep, RecordsMatchIndependentRuns) {
    Graph g = testing::random_graph_no_isolated(30, 0.15, 3);
    DistanceMatrix d = distance_hop(g);
    PowerSpec p = make_power_spec(g, PowerKind::Degree);
    auto grid = sigma_grid(d, 4);
    SweepOptions opts;
    opts.optimizer.seed = 5;
    opts.independent_seeds = true;
    SweepResult r = sweep(g, d, p, DistanceFunction::rational(1.0), grid, opts);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        OptimizerConfig cfg;
        cfg.seed = 5 + k;
        NullMatrix nm = build_null_matrix(p, d, DistanceFunction::rational(grid[k]));
        auto direct = louvain_optimize(g, nm, cfg);
        EXPECT_EQ(r.records[k].partition, direct.partition);
        EXPECT_EQ(r.records[k].q, direct.q);
        EXPECT_EQ(r.records[k].communities, direct.partition.community_count());
    }
}

TEST(Planted, StructureAndDeterminism) {
    PlantedSpec spec;
    spec.seed = 11;
    PlantedGraph a = generate_planted_graph(spec);
    PlantedGraph b = generate_planted_graph(spec);
    EXPECT_EQ(a.graph.node_count(), 96u);
    EXPECT_EQ(a.coarse.community_count(), 4u);
    EXPECT_EQ(a.fine.community_count(), 12u);
    EXPECT_TRUE(a.fine.refines(a.coarse));
    EXPECT_EQ(a.positions.rows, b.positions.rows);
    for (std::size_t i = 0; i < 96; ++i) {
        for (std::size_t j = 0; j < 96; ++j) EXPECT_EQ(a.graph.adjacency(i, j), b.graph.adjacency(i, j));
    }
    double mean = planted_expected_edges(spec);
    double sd = std::sqrt(planted_edge_variance(spec));
    EXPECT_LT(std::abs(static_cast<double>(a.graph.edge_count()) - mean), 5.0 * sd);
}

TEST(Planted, HandCountedDensities) {
    PlantedSpec spec;
    spec.coarse_groups = 2;
    spec.fine_groups = 2;
    spec.group_size = 2;
    // 8 nodes: 4 fine pairs, 8 coarse pairs, 16 outside pairs.
    EXPECT_NEAR(planted_expected_edges(spec), 4 * 0.8 + 8 * 0.1 + 16 * 0.005, 1e-12);
    EXPECT_NEAR(planted_edge_variance(spec), 4 * 0.16 + 8 * 0.09 + 16 * 0.005 * 0.995, 1e-12);
    spec.p_out = 1.5;
    EXPECT_THROW(generate_planted_graph(spec), ValidationError);
}

}  // namespace
}  // namespace distmod
