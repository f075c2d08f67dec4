#pragma once

#include <cstddef>
#include <istream>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "distmod/dense_matrix.hpp"
#include "distmod/graph.hpp"

namespace distmod {

/// Marks node pairs with no finite distance (e.g. different components).
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

enum class DistanceSource { StructuralRow, StructuralHop, Attribute, File };

std::string_view to_string(DistanceSource s);

/// Symmetric nonnegative n x n matrix with zero diagonal. Unreachable pairs
/// hold kUnreachable.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    /// Validates and takes ownership. Throws ValidationError if `d` is not
    /// exactly symmetric, has a nonzero diagonal, or has negative/NaN entries.
    DistanceMatrix(DenseMatrix d, DistanceSource source);

    std::size_t size() const noexcept { return d_.size(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return d_(i, j); }
    const DenseMatrix& matrix() const noexcept { return d_; }
    DistanceSource source() const noexcept { return source_; }

    /// Smallest strictly positive finite off-diagonal entry, if any.
    std::optional<double> min_positive() const;
    /// Largest finite off-diagonal entry, if any.
    std::optional<double> max_finite() const;

private:
    DenseMatrix d_;
    DistanceSource source_ = DistanceSource::File;
};

enum class RowMetric { Euclidean, Jaccard };

/// d_ij between rows i and j of A. Jaccard is the dissimilarity of the nonzero
/// supports; two empty supports are at distance 0.
DistanceMatrix distance_from_adjacency_rows(const Graph& g, RowMetric metric);

/// Unweighted shortest-path hop counts (BFS from every node).
DistanceMatrix distance_hop(const Graph& g);

/// Minkowski distance of order `order` >= 1 between attribute rows;
/// `order` = infinity gives the Chebyshev distance. When `expected_nodes` is
/// set, the attribute row count must match it.
DistanceMatrix distance_from_attributes(const NodeAttributes& attrs, double order,
                                        std::optional<std::size_t> expected_nodes = std::nullopt);

enum class DistanceFileFormat { Auto, Dense, Triplet };

/// Reads a distance CSV.
///
/// Dense: a header row of n node labels followed by n rows of n values.
/// Triplet: lines `i,j,d`; omitted pairs are unreachable.
/// Auto picks Dense when the file has n+1 nonempty lines of n fields each.
///
/// Labels are resolved through `g` when given (so rows may come in any order);
/// otherwise they must be indices 0..n-1. Entries may differ from their mirror
/// by at most 1e-9 (relative for values above 1) and are then averaged. The
/// diagonal is forced to 0.
DistanceMatrix load_distance_file(std::istream& in, std::size_t n,
                                  const Graph* g = nullptr,
                                  DistanceFileFormat format = DistanceFileFormat::Auto);

}  // namespace distmod
