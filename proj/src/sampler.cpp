#include "distmod/sampler.hpp"

#include <algorithm>
#include <random>

#include "distmod/error.hpp"

namespace distmod {

namespace {

// splitmix64 finalizer; decorrelates per-sample seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t draw(double mean, SamplerMode mode, std::mt19937_64& rng) {
    if (mean <= 0.0) return 0;
    if (mode == SamplerMode::Bernoulli) {
        std::bernoulli_distribution coin(std::min(mean, 1.0));
        return coin(rng) ? 1 : 0;
    }
    std::poisson_distribution<std::uint64_t> poisson(mean);
    return poisson(rng);
}

}  // namespace

SampleBatch sample_null_graphs(const NullMatrix& nm, std::size_t count, std::uint64_t seed,
                               SamplerMode mode, bool keep_graphs) {
    if (count == 0) throw ValidationError("sample count must be >= 1");
    const std::size_t n = nm.size();
    for (double v : nm.p_dist.values()) {
        if (v < 0.0) throw ValidationError("null matrix has negative entries");
    }

    SampleBatch batch;
    batch.expected = nm.p_dist;
    batch.empirical_mean = DenseMatrix(n);
    batch.seed = seed;
    batch.count = count;
    batch.mode = mode;

    DenseMatrix sums(n);
    for (std::size_t k = 0; k < count; ++k) {
        std::mt19937_64 rng(derive_seed(seed, k));
        GraphBuilder builder(keep_graphs ? n : 0);
        std::uint64_t edges = 0;
        for (std::size_t i = 0; i < n; ++i) {
            // Each self-loop adds 2 to A_ii, so loops are drawn at half the mean.
            std::uint64_t loops = draw(nm.p_dist(i, i) / 2.0, mode, rng);
            if (loops > 0) {
                if (keep_graphs) builder.add_edge(i, i, loops);
                sums(i, i) += 2.0 * static_cast<double>(loops);
                edges += loops;
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                std::uint64_t c = draw(nm.p_dist(i, j), mode, rng);
                if (c == 0) continue;
                if (keep_graphs) builder.add_edge(i, j, c);
                sums(i, j) += static_cast<double>(c);
                sums(j, i) += static_cast<double>(c);
                edges += c;
            }
        }
        batch.edge_counts.push_back(edges);
        if (keep_graphs) batch.graphs.push_back(builder.build());
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            batch.empirical_mean(i, j) = sums(i, j) / static_cast<double>(count);
        }
    }
    return batch;
}

double poisson_edge_count_variance(const NullMatrix& nm) {
    double var = 0.0;
    for (std::size_t i = 0; i < nm.size(); ++i) {
        var += nm.p_dist(i, i) / 2.0;
        for (std::size_t j = i + 1; j < nm.size(); ++j) var += nm.p_dist(i, j);
    }
    return var;
}

}  // namespace distmod
