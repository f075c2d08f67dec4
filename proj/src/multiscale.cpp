#include "distmod/multiscale.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "distmod/error.hpp"
#include "distmod/modularity.hpp"

namespace distmod {

std::vector<double> sigma_grid(const DistanceMatrix& d, std::size_t points, GridScale scale) {
    if (points < 2) throw ValidationError("sigma grid needs at least two points");
    auto lo_d = d.min_positive();
    auto hi_d = d.max_finite();
    if (!lo_d || !hi_d) throw ValidationError("sigma grid needs a positive finite distance");
    const double lo = *lo_d / 10.0;
    const double hi = *hi_d * 10.0;

    std::vector<double> grid(points);
    const auto last = static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k) {
        const double t = static_cast<double>(k) / last;
        grid[k] = scale == GridScale::Log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

SweepResult sweep(const Graph& g, const DistanceMatrix& d, const PowerSpec& powers,
                  const DistanceFunction& f, const std::vector<double>& grid,
                  const SweepOptions& options) {
    if (grid.empty()) throw ValidationError("sigma grid is empty");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) throw ValidationError("sigma grid must be strictly increasing");
    }

    SweepResult result;
    {
        NullMatrix reference = build_null_matrix(powers, d, DistanceFunction::constant());
        OptimizationResult ng = louvain_optimize(g, reference, options.optimizer);
        result.ng_reference = ng.partition;
        result.ng_q = ng.q;
    }

    for (std::size_t k = 0; k < grid.size(); ++k) {
        OptimizerConfig cfg = options.optimizer;
        if (options.independent_seeds) cfg.seed += k;
        NullMatrix nm = build_null_matrix(powers, d, f.with_sigma(grid[k]));
        OptimizationResult opt = louvain_optimize(g, nm, cfg);

        SweepRecord rec;
        rec.sigma = grid[k];
        rec.partition = opt.partition;
        rec.q = opt.q;
        rec.communities = opt.partition.community_count();
        if (!result.records.empty()) {
            rec.nmi_prev = compare_partitions(result.records.back().partition, rec.partition).nmi;
        }
        rec.nmi_ng = compare_partitions(result.ng_reference, rec.partition).nmi;
        result.records.push_back(std::move(rec));
    }
    return result;
}

namespace {

void check_planted(const PlantedSpec& spec) {
    for (double p : {spec.p_fine, spec.p_coarse, spec.p_out}) {
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("planted densities must lie in [0, 1]");
    }
    if (spec.coarse_groups == 0 || spec.fine_groups == 0 || spec.group_size == 0) {
        throw ValidationError("planted group counts and sizes must be >= 1");
    }
}

struct PlantedLayout {
    std::size_t n;
    std::vector<std::size_t> coarse;
    std::vector<std::size_t> fine;
};

PlantedLayout layout(const PlantedSpec& spec) {
    PlantedLayout l;
    l.n = spec.coarse_groups * spec.fine_groups * spec.group_size;
    for (std::size_t v = 0; v < l.n; ++v) {
        std::size_t f = v / spec.group_size;
        l.fine.push_back(f);
        l.coarse.push_back(f / spec.fine_groups);
    }
    return l;
}

double pair_density(const PlantedSpec& spec, const PlantedLayout& l, std::size_t i, std::size_t j) {
    if (l.fine[i] == l.fine[j]) return spec.p_fine;
    if (l.coarse[i] == l.coarse[j]) return spec.p_coarse;
    return spec.p_out;
}

}  // namespace

double planted_expected_edges(const PlantedSpec& spec) {
    check_planted(spec);
    PlantedLayout l = layout(spec);
    double mean = 0.0;
    for (std::size_t i = 0; i < l.n; ++i) {
        for (std::size_t j = i + 1; j < l.n; ++j) mean += pair_density(spec, l, i, j);
    }
    return mean;
}

double planted_edge_variance(const PlantedSpec& spec) {
    check_planted(spec);
    PlantedLayout l = layout(spec);
    double var = 0.0;
    for (std::size_t i = 0; i < l.n; ++i) {
        for (std::size_t j = i + 1; j < l.n; ++j) {
            double p = pair_density(spec, l, i, j);
            var += p * (1.0 - p);
        }
    }
    return var;
}

PlantedGraph generate_planted_graph(const PlantedSpec& spec) {
    check_planted(spec);
    PlantedLayout l = layout(spec);
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, spec.jitter);

    PlantedGraph out;
    out.positions.column_names = {"x", "y"};
    constexpr double tau = 2.0 * std::numbers::pi;
    for (std::size_t v = 0; v < l.n; ++v) {
        double a = tau * static_cast<double>(l.coarse[v]) / static_cast<double>(spec.coarse_groups);
        double b = tau * static_cast<double>(l.fine[v] % spec.fine_groups) /
                   static_cast<double>(spec.fine_groups);
        double x = spec.coarse_radius * std::cos(a) + spec.fine_radius * std::cos(b);
        double y = spec.coarse_radius * std::sin(a) + spec.fine_radius * std::sin(b);
        if (spec.jitter > 0.0) {
            x += jitter(rng);
            y += jitter(rng);
        }
        out.positions.node_labels.push_back(std::to_string(v));
        out.positions.rows.push_back({x, y});
    }

    GraphBuilder builder(l.n);
    for (std::size_t i = 0; i < l.n; ++i) {
        for (std::size_t j = i + 1; j < l.n; ++j) {
            if (uniform(rng) < pair_density(spec, l, i, j)) builder.add_edge(i, j);
        }
    }
    out.graph = builder.build();
    if (out.graph.two_m() == 0) throw ValidationError("planted parameters produced a graph without edges");
    out.coarse = Partition(l.coarse);
    out.fine = Partition(l.fine);
    return out;
}

}  // namespace distmod
