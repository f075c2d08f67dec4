#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "distmod/distance.hpp"
#include "distmod/graph.hpp"
#include "distmod/null_model.hpp"
#include "distmod/optimizer.hpp"
#include "distmod/partition.hpp"

namespace distmod {

enum class GridScale { Log, Linear };

/// `points` field-range values from (min positive d)/10 to (max finite d)*10.
std::vector<double> sigma_grid(const DistanceMatrix& d, std::size_t points,
                               GridScale scale = GridScale::Log);

struct SweepRecord {
    double sigma = 0.0;
    Partition partition;
    double q = 0.0;
    std::size_t communities = 0;
    std::optional<double> nmi_prev;  // empty for the first record
    double nmi_ng = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    /// Partition found with the constant-f null model (same powers, same seed).
    Partition ng_reference;
    double ng_q = 0.0;
};

struct SweepOptions {
    OptimizerConfig optimizer;
    /// When set, record k uses seed optimizer.seed + k instead of a shared seed.
    bool independent_seeds = false;
};

/// Builds the null matrix for each sigma (f = `f` with that sigma) and
/// optimizes Q against it. `grid` must be strictly increasing.
SweepResult sweep(const Graph& g, const DistanceMatrix& d, const PowerSpec& powers,
                  const DistanceFunction& f, const std::vector<double>& grid,
                  const SweepOptions& options = {});

/// Two-level planted partition: `coarse_groups` groups, each split into
/// `fine_groups` groups of `group_size` nodes.
struct PlantedSpec {
    std::size_t coarse_groups = 4;
    std::size_t fine_groups = 3;
    std::size_t group_size = 8;
    double p_fine = 0.8;    // same fine group
    double p_coarse = 0.1;  // same coarse group, different fine group
    double p_out = 0.005;   // different coarse groups
    /// Node positions: coarse centres on a circle of this radius, fine centres
    /// on a circle of `fine_radius` around them, Gaussian jitter `jitter`.
    double coarse_radius = 20.0;
    double fine_radius = 4.0;
    double jitter = 0.5;
    std::uint64_t seed = 0;
};

struct PlantedGraph {
    Graph graph;
    NodeAttributes positions;  // columns x, y
    Partition coarse;
    Partition fine;
};

PlantedGraph generate_planted_graph(const PlantedSpec& spec);

/// Mean of the number of edges implied by the densities of `spec`.
double planted_expected_edges(const PlantedSpec& spec);
double planted_edge_variance(const PlantedSpec& spec);

}  // namespace distmod
