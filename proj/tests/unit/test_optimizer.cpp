#include <gtest/gtest.h>

#include <random>

#include "distmod/error.hpp"
#include "distmod/modularity.hpp"
#include "distmod/optimizer.hpp"
#include "test_support.hpp"

namespace distmod {
namespace {

TEST(BruteForce, TwoTriangles) {
    Graph g = testing::two_triangles();
    auto best = brute_force_best_partition(g, ng_null_matrix(g));
    EXPECT_NEAR(best.q, 0.5, 1e-12);
    EXPECT_EQ(best.partition, Partition(std::vector<std::size_t>{0, 0, 0, 1, 1, 1}));
}

TEST(BruteForce, TriangleAndSingleEdgeAreAllInOne) {
    Graph t = testing::triangle();
    auto bt = brute_force_best_partition(t, ng_null_matrix(t));
    EXPECT_NEAR(bt.q, 0.0, 1e-12);
    EXPECT_EQ(bt.partition, Partition::all_in_one(3));

    Graph e = testing::from_edges(2, {{0, 1}});
    auto be = brute_force_best_partition(e, ng_null_matrix(e));
    EXPECT_NEAR(be.q, 0.0, 1e-12);
    EXPECT_EQ(be.partition, Partition::all_in_one(2));
    EXPECT_NEAR(modularity_q(e, ng_null_matrix(e), Partition::singletons(2)), -0.5, 1e-15);
}

TEST(BruteForce, MatchesLabellingEnumerationOracle) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Graph g = testing::random_graph_no_isolated(6, 0.3, seed);
        DistanceMatrix d = distance_hop(g);
        NullMatrix nm = seed % 2 ? ng_null_matrix(g)
                                 : build_null_matrix(make_power_spec(g, PowerKind::Degree), d,
                                                     DistanceFunction::gaussian_power(1.2));
        auto best = brute_force_best_partition(g, nm);
        EXPECT_NEAR(best.q, testing::reference_best_q(g, nm), 1e-12);
        EXPECT_NEAR(best.q, modularity_q(g, nm, best.partition), 1e-12);
    }
}

TEST(BruteForce, RefusesLargeGraphs) {
    Graph g = testing::ring_of_cliques(4, 4);
    EXPECT_THROW(brute_force_best_partition(g, ng_null_matrix(g)), ValidationError);
}

TEST(MoveGain, IdentityMoveIsZeroAndGainMatchesRecompute) {
    Graph g = testing::random_graph_no_isolated(10, 0.3, 4);
    NullMatrix nm = ng_null_matrix(g);
    AggregatedInstance inst = AggregatedInstance::from(g, nm);
    std::vector<std::size_t> labels = {0, 0, 1, 1, 2, 2, 0, 1, 2, 2};
    for (std::size_t node = 0; node < 10; ++node) {
        EXPECT_EQ(move_gain(inst, labels, node, labels[node]), 0.0);
        for (std::size_t target = 0; target < 4; ++target) {
            auto moved = labels;
            moved[node] = target;
            double expected = instance_q(inst, Partition(moved)) - instance_q(inst, Partition(labels));
            EXPECT_NEAR(move_gain(inst, labels, node, target), expected, 1e-12);
        }
    }
}

TEST(LocalMovePass, AtOptimumNothingMoves) {
    Graph g = testing::two_triangles();
    NullMatrix nm = ng_null_matrix(g);
    AggregatedInstance inst = AggregatedInstance::from(g, nm);
    Partition optimum = brute_force_best_partition(g, nm).partition;
    std::mt19937_64 rng(0);
    auto result = local_move_pass(inst, OptimizerConfig{}, optimum, rng);
    EXPECT_EQ(result.delta_q, 0.0);
    EXPECT_EQ(result.moves, 0u);
    EXPECT_EQ(result.partition, optimum);
}

TEST(LocalMovePass, TwoTrianglesFromSingletons) {
    Graph g = testing::two_triangles();
    NullMatrix nm = ng_null_matrix(g);
    AggregatedInstance inst = AggregatedInstance::from(g, nm);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(seed);
        OptimizerConfig cfg;
        cfg.seed = seed;
        auto result = local_move_pass(inst, cfg, Partition::singletons(6), rng);
        EXPECT_EQ(result.partition, connected_components(g));
        EXPECT_NEAR(instance_q(inst, result.partition), 0.5, 1e-12);
    }
}

TEST(LocalMovePass, BookkeepingMatchesRecompute) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = testing::random_graph_no_isolated(30, 0.12, seed);
        DistanceMatrix d = distance_hop(g);
        NullMatrix nm = build_null_matrix(make_power_spec(g, PowerKind::Degree), d,
                                          DistanceFunction::gaussian_power(0.5 + 0.2 * static_cast<double>(seed)));
        AggregatedInstance inst = AggregatedInstance::from(g, nm);
        std::mt19937_64 rng(seed);
        Partition start = Partition::singletons(30);
        auto result = local_move_pass(inst, OptimizerConfig{}, start, rng);
        EXPECT_NEAR(result.delta_q, instance_q(inst, result.partition) - instance_q(inst, start), 1e-9);
    }
}

TEST(RefinePass, PathEscapesPairs) {
    // Greedy moves stop at adjacent pairs; the optimum is the two halves.
    Graph g = testing::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    NullMatrix nm = ng_null_matrix(g);
    AggregatedInstance inst = AggregatedInstance::from(g, nm);
    Partition pairs(std::vector<std::size_t>{0, 0, 1, 1, 2, 2});
    std::mt19937_64 rng(0);
    EXPECT_EQ(local_move_pass(inst, OptimizerConfig{}, pairs, rng).moves, 0u);
    auto refined = refine_pass(inst, OptimizerConfig{}, pairs);
    EXPECT_EQ(refined.partition, Partition(std::vector<std::size_t>{0, 0, 0, 1, 1, 1}));
    EXPECT_NEAR(instance_q(inst, pairs), 0.26, 1e-12);
    EXPECT_NEAR(instance_q(inst, refined.partition), 0.3, 1e-12);
    EXPECT_NEAR(refined.delta_q, 0.04, 1e-12);
}

TEST(RefinePass, AtOptimumKeepsPartition) {
    Graph g = testing::two_triangles();
    AggregatedInstance inst = AggregatedInstance::from(g, ng_null_matrix(g));
    auto refined = refine_pass(inst, OptimizerConfig{}, connected_components(g));
    EXPECT_EQ(refined.moves, 0u);
    EXPECT_EQ(refined.delta_q, 0.0);
    EXPECT_EQ(refined.partition, connected_components(g));
}

TEST(RefinePass, GainMatchesRecompute) {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = testing::random_graph_no_isolated(25, 0.15, seed);
        AggregatedInstance inst = AggregatedInstance::from(g, ng_null_matrix(g));
        std::uniform_int_distribution<std::size_t> l(0, 3);
        std::vector<std::size_t> labels(25);
        for (auto& v : labels) v = l(rng);
        Partition start(labels);
        auto refined = refine_pass(inst, OptimizerConfig{}, start);
        EXPECT_NEAR(refined.delta_q, instance_q(inst, refined.partition) - instance_q(inst, start), 1e-9);
        EXPECT_GE(refined.delta_q, 0.0);
    }
}

TEST(Aggregate, IdentityAndTwoTriangles) {
    Graph g = testing::two_triangles();
    NullMatrix nm = ng_null_matrix(g);
    AggregatedInstance inst = AggregatedInstance::from(g, nm);

    AggregatedInstance same = aggregate(inst, Partition::singletons(6));
    EXPECT_EQ(same.adjacency, inst.adjacency);
    EXPECT_EQ(same.null, inst.null);

    AggregatedInstance two = aggregate(inst, connected_components(g));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two.adjacency(0, 0), 6.0);
    EXPECT_EQ(two.adjacency(1, 1), 6.0);
    EXPECT_EQ(two.adjacency(0, 1), 0.0);
    EXPECT_NEAR(two.null.total(), 12.0, 1e-12);
    EXPECT_EQ(two.super_of, (std::vector<std::size_t>{0, 0, 0, 1, 1, 1}));
}

TEST(Aggregate, PreservesTotalsAndQ) {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = testing::random_graph_no_isolated(25, 0.15, seed);
        DistanceMatrix d = distance_from_adjacency_rows(g, RowMetric::Euclidean);
        NullMatrix nm = build_null_matrix(make_power_spec(g, PowerKind::Degree), d, DistanceFunction::rational(1.0));
        AggregatedInstance inst = AggregatedInstance::from(g, nm);
        std::uniform_int_distribution<std::size_t> l(0, 5);
        std::vector<std::size_t> labels(25);
        for (auto& v : labels) v = l(rng);
        Partition part(labels);
        AggregatedInstance coarse = aggregate(inst, part);
        EXPECT_EQ(coarse.adjacency.total(), static_cast<double>(g.two_m()));
        EXPECT_NEAR(coarse.null.total(), inst.null.total(), 1e-9);
        EXPECT_NEAR(instance_q(coarse, Partition::singletons(coarse.size())), modularity_q(g, nm, part), 1e-12);
    }
}

TEST(Louvain, TwoTriangles) {
    Graph g = testing::two_triangles();
    auto result = louvain_optimize(g, ng_null_matrix(g));
    EXPECT_NEAR(result.q, 0.5, 1e-12);
    EXPECT_EQ(result.partition.community_count(), 2u);
}

TEST(Louvain, RingOfFourCliques) {
    Graph g = testing::ring_of_cliques(4, 4);
    NullMatrix nm = ng_null_matrix(g);
    auto result = louvain_optimize(g, nm);
    std::vector<std::size_t> cliques;
    for (std::size_t v = 0; v < 16; ++v) cliques.push_back(v / 4);
    Partition planted(cliques);
    double q_planted = testing::reference_q(g, nm, planted);
    EXPECT_GT(q_planted, testing::reference_q(g, nm, Partition::all_in_one(16)));
    EXPECT_EQ(result.partition, planted);
    EXPECT_NEAR(result.q, q_planted, 1e-12);
}

TEST(Louvain, TraceNondecreasingAndDeterministic) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = testing::random_graph_no_isolated(60, 0.08, seed);
        DistanceMatrix d = distance_hop(g);
        NullMatrix nm = build_null_matrix(make_power_spec(g, PowerKind::Degree), d, DistanceFunction::gaussian_power(2.0));
        OptimizerConfig cfg;
        cfg.seed = seed;
        auto a = louvain_optimize(g, nm, cfg);
        auto b = louvain_optimize(g, nm, cfg);
        EXPECT_EQ(a.partition, b.partition);
        EXPECT_EQ(a.q, b.q);
        for (std::size_t k = 1; k < a.trace.size(); ++k) EXPECT_GE(a.trace[k].q, a.trace[k - 1].q - 1e-12);
        EXPECT_NEAR(a.trace.back().q, a.q, 1e-12);
        EXPECT_NEAR(a.q, testing::reference_q(g, nm, a.partition), 1e-12);
    }
}

TEST(Louvain, SmallSigmaKeepsEveryEdgeInside) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = testing::random_graph_no_isolated(20, 0.1, seed);
        Graph other = testing::random_graph_no_isolated(10, 0.2, seed + 100);
        GraphBuilder b(30);
        for (std::size_t i = 0; i < 20; ++i) {
            for (const auto& nb : g.row(i)) {
                if (nb.node > i) b.add_edge(i, nb.node);
            }
        }
        for (std::size_t i = 0; i < 10; ++i) {
            for (const auto& nb : other.row(i)) {
                if (nb.node > i) b.add_edge(20 + i, 20 + nb.node);
            }
        }
        Graph two = b.build();
        DistanceMatrix d = distance_hop(two);
        NullMatrix nm = build_null_matrix(make_power_spec(two, PowerKind::Degree), d,
                                          DistanceFunction::gaussian_power(*d.min_positive() / 50.0));
        auto result = louvain_optimize(two, nm);
        EXPECT_NEAR(modularity_q_sigma_zero(two, result.partition), 0.0, 1e-12);
        EXPECT_TRUE(connected_components(two).refines(result.partition));
        EXPECT_NEAR(result.q, 0.0, 1e-9);
    }
}

TEST(Louvain, RestartsNeverLowerQ) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = testing::random_graph_no_isolated(40, 0.1, 900 + seed);
        NullMatrix nm = ng_null_matrix(g);
        OptimizerConfig one;
        one.seed = seed;
        one.restarts = 1;
        OptimizerConfig many = one;
        many.restarts = 8;
        EXPECT_GE(louvain_optimize(g, nm, many).q, louvain_optimize(g, nm, one).q - 1e-12);
    }
    OptimizerConfig none;
    none.restarts = 0;
    Graph g = testing::two_triangles();
    EXPECT_THROW(louvain_optimize(g, ng_null_matrix(g), none), ValidationError);
}

TEST(Louvain, IndexOrderIsAlsoDeterministic) {
    Graph g = testing::ring_of_cliques(5, 5);
    OptimizerConfig cfg;
    cfg.order = SweepOrder::IndexOrder;
    auto a = louvain_optimize(g, ng_null_matrix(g), cfg);
    auto b = louvain_optimize(g, ng_null_matrix(g), cfg);
    EXPECT_EQ(a.partition, b.partition);
    EXPECT_EQ(a.partition.community_count(), 5u);
}

}  // namespace
}  // namespace distmod
