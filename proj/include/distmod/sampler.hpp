#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "distmod/dense_matrix.hpp"
#include "distmod/graph.hpp"
#include "distmod/null_model.hpp"

namespace distmod {

enum class SamplerMode {
    /// Multiplicity ~ Poisson(P_ij); self-loops ~ Poisson(P_ii / 2).
    Poisson,
    /// Edge present with probability min(P_ij, 1). Biased whenever P_ij > 1.
    Bernoulli,
};

struct SampleBatch {
    std::vector<Graph> graphs;  // empty when graphs were not retained
    DenseMatrix expected;       // P^dist of the source null matrix
    DenseMatrix empirical_mean; // mean A_ij over the samples
    std::vector<std::uint64_t> edge_counts;  // m of each sample
    std::uint64_t seed = 0;
    std::size_t count = 0;
    SamplerMode mode = SamplerMode::Poisson;
};

/// Draws `count` multigraphs whose expected adjacency is P^dist. Sample k uses
/// its own engine seeded from (seed, k).
SampleBatch sample_null_graphs(const NullMatrix& nm, std::size_t count, std::uint64_t seed,
                               SamplerMode mode = SamplerMode::Poisson, bool keep_graphs = true);

/// Variance of the total edge count of one Poisson sample (sum of the means).
double poisson_edge_count_variance(const NullMatrix& nm);

}  // namespace distmod
