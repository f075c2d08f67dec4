#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "distmod/distance.hpp"
#include "distmod/error.hpp"
#include "test_support.hpp"

namespace distmod {
namespace {

NodeAttributes points(std::vector<std::vector<double>> rows) {
    NodeAttributes a;
    for (std::size_t c = 0; c < rows.front().size(); ++c) a.column_names.push_back("c" + std::to_string(c));
    for (std::size_t i = 0; i < rows.size(); ++i) a.node_labels.push_back(std::to_string(i));
    a.rows = std::move(rows);
    return a;
}

void expect_valid(const DistanceMatrix& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_EQ(d(i, i), 0.0);
        for (std::size_t j = 0; j < d.size(); ++j) {
            EXPECT_EQ(d(i, j), d(j, i));
            EXPECT_GE(d(i, j), 0.0);
        }
    }
}

TEST(RowDistance, TriangleEuclidean) {
    DistanceMatrix d = distance_from_adjacency_rows(testing::triangle(), RowMetric::Euclidean);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(d(i, j), i == j ? 0.0 : std::sqrt(2.0));
    }
    EXPECT_EQ(d.source(), DistanceSource::StructuralRow);
}

TEST(RowDistance, IdenticalRowsAreAtZero) {
    // 0 and 1 both attach only to 2.
    Graph g = testing::from_edges(3, {{0, 2}, {1, 2}});
    EXPECT_EQ(distance_from_adjacency_rows(g, RowMetric::Euclidean)(0, 1), 0.0);
    EXPECT_EQ(distance_from_adjacency_rows(g, RowMetric::Jaccard)(0, 1), 0.0);
}

TEST(RowDistance, JaccardEmptySupportsAreIdentical) {
    GraphBuilder b(4);
    b.add_edge(2, 3);
    DistanceMatrix d = distance_from_adjacency_rows(b.build(), RowMetric::Jaccard);
    EXPECT_EQ(d(0, 1), 0.0);
    EXPECT_EQ(d(0, 2), 1.0);
    // Supports {1} and {0} on K2 are disjoint.
    EXPECT_EQ(d(2, 3), 1.0);
}

TEST(RowDistance, JaccardPartialOverlap) {
    // N(0) = {2, 3}, N(1) = {3, 4}: overlap 1 of 3.
    Graph g = testing::from_edges(5, {{0, 2}, {0, 3}, {1, 3}, {1, 4}});
    EXPECT_DOUBLE_EQ(distance_from_adjacency_rows(g, RowMetric::Jaccard)(0, 1), 2.0 / 3.0);
}

TEST(HopDistance, Examples) {
    DistanceMatrix p = distance_hop(testing::path3());
    EXPECT_EQ(p(0, 2), 2.0);
    DistanceMatrix t = distance_hop(testing::triangle());
    EXPECT_EQ(t(0, 1), 1.0);
    EXPECT_EQ(t(1, 2), 1.0);
    DistanceMatrix split = distance_hop(testing::from_edges(4, {{0, 1}, {2, 3}}));
    EXPECT_EQ(split(0, 2), kUnreachable);
    EXPECT_TRUE(std::isinf(split(1, 3)));
    expect_valid(split);
    EXPECT_EQ(split.max_finite(), 1.0);
}

TEST(HopDistance, TriangleInequalityExhaustive) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = testing::random_graph(40, 0.06, seed);
        DistanceMatrix d = distance_hop(g);
        expect_valid(d);
        for (std::size_t i = 0; i < 40; ++i) {
            for (std::size_t j = 0; j < 40; ++j) {
                if (std::isinf(d(i, j))) continue;
                for (std::size_t k = 0; k < 40; ++k) {
                    if (std::isinf(d(j, k))) continue;
                    EXPECT_LE(d(i, k), d(i, j) + d(j, k));
                }
            }
        }
    }
}

TEST(AttributeDistance, MinkowskiFamily) {
    NodeAttributes a = points({{0, 0}, {3, 4}, {3, 4}});
    EXPECT_DOUBLE_EQ(distance_from_attributes(a, 2.0)(0, 1), 5.0);
    EXPECT_DOUBLE_EQ(distance_from_attributes(a, 1.0)(0, 1), 7.0);
    EXPECT_DOUBLE_EQ(distance_from_attributes(a, INFINITY)(0, 1), 4.0);
    EXPECT_NEAR(distance_from_attributes(a, 3.0)(0, 1), std::cbrt(27.0 + 64.0), 1e-12);
    EXPECT_EQ(distance_from_attributes(a, 2.0)(1, 2), 0.0);
    expect_valid(distance_from_attributes(a, 1.5));
}

TEST(AttributeDistance, OneDimensionalEqualsAbsoluteDifference) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> x(0.0, 10.0);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 30; ++i) rows.push_back({x(rng)});
    NodeAttributes a = points(rows);
    DistanceMatrix d = distance_from_attributes(a, 2.0);
    for (std::size_t i = 0; i < 30; ++i) {
        for (std::size_t j = 0; j < 30; ++j) EXPECT_DOUBLE_EQ(d(i, j), std::abs(rows[i][0] - rows[j][0]));
    }
}

TEST(AttributeDistance, Errors) {
    NodeAttributes a = points({{0.0}, {1.0}});
    EXPECT_THROW(distance_from_attributes(a, 0.5), ValidationError);
    EXPECT_THROW(distance_from_attributes(a, 2.0, 3), ValidationError);
    a.rows[1][0] = NAN;
    EXPECT_THROW(distance_from_attributes(a, 2.0), ValidationError);
}

TEST(DistanceFile, DenseAccepted) {
    std::istringstream in("0,1,2\n0,1,2\n1,0,1.5\n2,1.5,0\n");
    DistanceMatrix d = load_distance_file(in, 3);
    EXPECT_EQ(d(0, 2), 2.0);
    EXPECT_EQ(d(2, 1), 1.5);
    EXPECT_EQ(d.source(), DistanceSource::File);
}

TEST(DistanceFile, DenseWithLabelsReordersToGraph) {
    Graph g = testing::parse("a b\nb c\n");
    std::istringstream in("c,a,b\n0,4,1\n4,0,2\n1,2,0\n");
    DistanceMatrix d = load_distance_file(in, 3, &g);
    EXPECT_EQ(d(0, 2), 4.0);  // a-c
    EXPECT_EQ(d(0, 1), 2.0);  // a-b
    EXPECT_EQ(d(1, 2), 1.0);  // b-c
}

TEST(DistanceFile, NegativeEntryRejected) {
    std::istringstream in("0,1,2\n0,-1,2\n-1,0,1\n2,1,0\n");
    EXPECT_THROW(load_distance_file(in, 3), ValidationError);
}

TEST(DistanceFile, NearSymmetricIsAveraged) {
    std::istringstream in("0,1\n0,1.0\n1.0000000001,0\n");
    DistanceMatrix d = load_distance_file(in, 2);
    EXPECT_DOUBLE_EQ(d(0, 1), 1.00000000005);
    EXPECT_EQ(d(0, 1), d(1, 0));
}

TEST(DistanceFile, AsymmetryBeyondToleranceRejected) {
    std::istringstream in("0,1\n0,1.0\n1.1,0\n");
    EXPECT_THROW(load_distance_file(in, 2), ValidationError);
}

TEST(DistanceFile, TripletsWithOmittedPairsUnreachable) {
    std::istringstream in("0,1,2.5\n2,1,1\n");
    DistanceMatrix d = load_distance_file(in, 3, nullptr, DistanceFileFormat::Triplet);
    EXPECT_EQ(d(1, 0), 2.5);
    EXPECT_EQ(d(1, 2), 1.0);
    EXPECT_EQ(d(0, 2), kUnreachable);
    expect_valid(d);
}

TEST(DistanceFile, DiagonalForcedToZero) {
    std::istringstream in("0,1\n5,1\n1,5\n");
    DistanceMatrix d = load_distance_file(in, 2);
    EXPECT_EQ(d(0, 0), 0.0);
    EXPECT_EQ(d(1, 1), 0.0);
}

TEST(DistanceFile, ParseErrors) {
    std::istringstream bad_index("0,7,1\n");
    EXPECT_THROW(load_distance_file(bad_index, 3, nullptr, DistanceFileFormat::Triplet), ParseError);
    std::istringstream bad_value("0,1,x\n");
    EXPECT_THROW(load_distance_file(bad_value, 3, nullptr, DistanceFileFormat::Triplet), ParseError);
}

TEST(DistanceMatrixType, RejectsInvalidInput) {
    DenseMatrix asym(2);
    asym(0, 1) = 1.0;
    EXPECT_THROW(DistanceMatrix(asym, DistanceSource::File), ValidationError);
    DenseMatrix diag(2);
    diag(0, 0) = 1.0;
    EXPECT_THROW(DistanceMatrix(diag, DistanceSource::File), ValidationError);
}

}  // namespace
}  // namespace distmod
