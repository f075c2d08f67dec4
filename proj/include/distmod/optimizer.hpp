#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "distmod/dense_matrix.hpp"
#include "distmod/graph.hpp"
#include "distmod/null_model.hpp"
#include "distmod/partition.hpp"

namespace distmod {

/// A (possibly coarsened) modularity instance. Super-node s stands for the
/// original nodes mapped to it; A and P hold block sums over those groups.
/// P is kept dense because the distance null matrix is not a rank-1 product.
struct AggregatedInstance {
    DenseMatrix adjacency;
    DenseMatrix null;
    std::vector<std::size_t> super_of;  // original node -> super-node
    double two_m = 0.0;

    std::size_t size() const noexcept { return adjacency.size(); }

    static AggregatedInstance from(const Graph& g, const NullMatrix& nm);
};

/// Q of `part` (over the instance's super-nodes).
double instance_q(const AggregatedInstance& inst, const Partition& part);

enum class SweepOrder { SeededShuffle, IndexOrder };

struct OptimizerConfig {
    std::uint64_t seed = 0;
    /// Cap on full node sweeps within one local-move pass.
    std::size_t max_passes = 1000;
    /// Minimum gain for a move to be applied.
    double min_gain = 1e-12;
    /// Gains closer than this are ties, resolved towards the smallest label.
    double tie_tolerance = 1e-10;
    SweepOrder order = SweepOrder::SeededShuffle;
    /// Run refine_pass on the original nodes after the levels converge.
    bool refine = true;
    /// Independent runs; run 0 uses `seed`, the best Q wins (earliest on ties).
    std::size_t restarts = 8;
};

/// Change in Q from moving `node` out of its community into `target` under
/// the labelling `labels` (labels need not be canonical; an unused label
/// means a fresh singleton community).
double move_gain(const AggregatedInstance& inst, const std::vector<std::size_t>& labels,
                 std::size_t node, std::size_t target);

struct LocalMoveResult {
    Partition partition;
    double delta_q = 0.0;   // sum of accepted gains
    std::size_t moves = 0;
    std::size_t sweeps = 0;
};

/// Greedy node moving until a full sweep makes no move with gain above
/// cfg.min_gain. `rng` drives the sweep order when it is SeededShuffle.
LocalMoveResult local_move_pass(const AggregatedInstance& inst, const OptimizerConfig& cfg,
                                const Partition& start, std::mt19937_64& rng);

/// Kernighan-Lin style pass: every node is moved once, each step taking the
/// best remaining single-node move even when its gain is negative; the
/// sequence is then cut back to its best prefix. Moves are kept only when
/// that prefix gains more than cfg.min_gain.
LocalMoveResult refine_pass(const AggregatedInstance& inst, const OptimizerConfig& cfg,
                            const Partition& start);

/// Block-sums A and P over the communities of `part`.
AggregatedInstance aggregate(const AggregatedInstance& inst, const Partition& part);

struct LevelRecord {
    std::size_t super_nodes = 0;
    std::size_t communities = 0;
    double q = 0.0;
    double delta_q = 0.0;
};

struct OptimizationResult {
    Partition partition;
    double q = 0.0;
    std::vector<LevelRecord> trace;
};

/// Louvain-style multilevel optimization of Q against an arbitrary symmetric
/// null matrix.
OptimizationResult louvain_optimize(const Graph& g, const NullMatrix& nm,
                                    const OptimizerConfig& cfg = {});

/// Exhaustive search over all set partitions (n <= 12). Ties go to the
/// lexicographically smallest canonical assignment vector.
struct BruteForceResult {
    Partition partition;
    double q = 0.0;
};

inline constexpr std::size_t kBruteForceMaxNodes = 12;

BruteForceResult brute_force_best_partition(const Graph& g, const NullMatrix& nm);
BruteForceResult brute_force_best_partition(const AggregatedInstance& inst);

}  // namespace distmod
