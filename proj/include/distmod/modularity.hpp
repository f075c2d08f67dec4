#pragma once

#include <cstddef>

#include "distmod/graph.hpp"
#include "distmod/null_model.hpp"
#include "distmod/partition.hpp"

namespace distmod {

/// Q = (1/2m) sum_ij (A_ij - P_ij) delta(l_i, l_j), summed block by block.
double modularity_q(const Graph& g, const NullMatrix& nm, const Partition& part);

/// Same quantity by a full n^2 scan with the Kronecker delta. Slower; kept as
/// an independent route for cross-checks.
double modularity_q_dense(const Graph& g, const NullMatrix& nm, const Partition& part);

/// Small-range limit of Q: (1/2m) sum of intra-community A_ij, minus 1.
double modularity_q_sigma_zero(const Graph& g, const Partition& part);

struct PartitionSimilarity {
    double nmi = 0.0;
    double rand_index = 0.0;
};

/// Normalized mutual information (arithmetic-mean normalization; two
/// single-block partitions score 1) and Rand index.
PartitionSimilarity compare_partitions(const Partition& a, const Partition& b);

}  // namespace distmod
