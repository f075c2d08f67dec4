#include "distmod/optimizer.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "distmod/error.hpp"
#include "distmod/modularity.hpp"

namespace distmod {

AggregatedInstance AggregatedInstance::from(const Graph& g, const NullMatrix& nm) {
    if (nm.size() != g.node_count()) throw ValidationError("null matrix does not match graph");
    if (g.two_m() == 0) throw ValidationError("cannot optimize modularity without edges");
    AggregatedInstance inst;
    inst.adjacency = adjacency_matrix(g);
    inst.null = nm.p_dist;
    inst.super_of.resize(g.node_count());
    std::iota(inst.super_of.begin(), inst.super_of.end(), std::size_t{0});
    inst.two_m = static_cast<double>(g.two_m());
    return inst;
}

double instance_q(const AggregatedInstance& inst, const Partition& part) {
    if (part.size() != inst.size()) throw ValidationError("partition does not match instance");
    double sum = 0.0;
    for (const auto& members : part.communities()) {
        for (std::size_t i : members) {
            for (std::size_t j : members) sum += inst.adjacency(i, j) - inst.null(i, j);
        }
    }
    return sum / inst.two_m;
}

namespace {

double b_entry(const AggregatedInstance& inst, std::size_t i, std::size_t j) {
    return inst.adjacency(i, j) - inst.null(i, j);
}

// Fisher-Yates driven directly by the 64-bit engine output so the order is
// identical across standard library implementations.
void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

double move_gain(const AggregatedInstance& inst, const std::vector<std::size_t>& labels,
                 std::size_t node, std::size_t target) {
    const std::size_t current = labels[node];
    if (target == current) return 0.0;
    double to_target = 0.0, to_current = 0.0;
    for (std::size_t j = 0; j < inst.size(); ++j) {
        if (j == node) continue;
        if (labels[j] == target) to_target += b_entry(inst, node, j);
        if (labels[j] == current) to_current += b_entry(inst, node, j);
    }
    return 2.0 * (to_target - to_current) / inst.two_m;
}

LocalMoveResult local_move_pass(const AggregatedInstance& inst, const OptimizerConfig& cfg,
                                const Partition& start, std::mt19937_64& rng) {
    const std::size_t s = inst.size();
    if (start.size() != s) throw ValidationError("start partition does not match instance");
    if (cfg.min_gain < 0.0) throw ValidationError("minimum move gain must be >= 0");

    std::vector<std::size_t> labels(start.labels().begin(), start.labels().end());
    std::vector<std::size_t> community_size(s, 0);
    for (std::size_t l : labels) ++community_size[l];

    std::vector<std::size_t> order(s);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (cfg.order == SweepOrder::SeededShuffle) shuffle(order, rng);

    LocalMoveResult result;
    std::vector<double> weight(s, 0.0);

    bool moved = true;
    while (moved && result.sweeps < cfg.max_passes) {
        moved = false;
        ++result.sweeps;
        for (std::size_t node : order) {
            const std::size_t current = labels[node];
            // weight[L] = sum of B(node, j) over j != node with label L.
            std::fill(weight.begin(), weight.end(), 0.0);
            for (std::size_t j = 0; j < s; ++j) {
                if (j != node) weight[labels[j]] += b_entry(inst, node, j);
            }
            const double stay = weight[current];
            const bool can_isolate = community_size[current] > 1;

            // Labels are scanned upward, so a tie keeps the smaller label.
            double best_gain = 0.0;
            std::size_t best = current;
            bool isolate_seen = false;
            for (std::size_t label = 0; label < s; ++label) {
                if (label == current) continue;
                if (community_size[label] == 0) {
                    if (!can_isolate || isolate_seen) continue;
                    isolate_seen = true;
                }
                double gain = 2.0 * (weight[label] - stay) / inst.two_m;
                if (best == current || gain > best_gain + cfg.tie_tolerance) {
                    best_gain = gain;
                    best = label;
                }
            }

            if (best != current && best_gain > cfg.min_gain) {
                --community_size[current];
                ++community_size[best];
                labels[node] = best;
                result.delta_q += best_gain;
                ++result.moves;
                moved = true;
            }
        }
    }
    result.partition = Partition(std::move(labels));
    return result;
}

AggregatedInstance aggregate(const AggregatedInstance& inst, const Partition& part) {
    if (part.size() != inst.size()) throw ValidationError("partition does not match instance");
    const std::size_t c = part.community_count();
    AggregatedInstance out;
    out.adjacency = DenseMatrix(c);
    out.null = DenseMatrix(c);
    for (std::size_t i = 0; i < inst.size(); ++i) {
        for (std::size_t j = 0; j < inst.size(); ++j) {
            out.adjacency(part[i], part[j]) += inst.adjacency(i, j);
            out.null(part[i], part[j]) += inst.null(i, j);
        }
    }
    out.super_of.resize(inst.super_of.size());
    for (std::size_t v = 0; v < inst.super_of.size(); ++v) out.super_of[v] = part[inst.super_of[v]];
    out.two_m = inst.two_m;
    return out;
}

LocalMoveResult refine_pass(const AggregatedInstance& inst, const OptimizerConfig& cfg,
                            const Partition& start) {
    const std::size_t s = inst.size();
    if (start.size() != s) throw ValidationError("start partition does not match instance");

    std::vector<std::size_t> labels(start.labels().begin(), start.labels().end());
    std::vector<std::size_t> community_size(s, 0);
    for (std::size_t l : labels) ++community_size[l];

    // weight(i, L) = sum of B(i, j) over j != i with label L.
    DenseMatrix weight(s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            if (j != i) weight(i, labels[j]) += b_entry(inst, i, j);
        }
    }

    struct Move {
        std::size_t node, from, to;
    };
    std::vector<Move> moves;
    std::vector<bool> moved(s, false);
    double cumulative = 0.0, best_total = 0.0;
    std::size_t best_prefix = 0;

    auto apply = [&](std::size_t v, std::size_t from, std::size_t to) {
        for (std::size_t j = 0; j < s; ++j) {
            if (j == v) continue;
            double b = b_entry(inst, j, v);
            weight(j, from) -= b;
            weight(j, to) += b;
        }
        --community_size[from];
        ++community_size[to];
        labels[v] = to;
    };

    for (std::size_t step = 0; step < s; ++step) {
        std::size_t empty = s;
        for (std::size_t l = 0; l < s; ++l) {
            if (community_size[l] == 0) {
                empty = l;
                break;
            }
        }
        bool found = false;
        double best_gain = 0.0;
        Move best{};
        for (std::size_t i = 0; i < s; ++i) {
            if (moved[i]) continue;
            const std::size_t current = labels[i];
            for (std::size_t l = 0; l < s; ++l) {
                if (l == current) continue;
                if (community_size[l] == 0 && (l != empty || community_size[current] == 1)) continue;
                double gain = 2.0 * (weight(i, l) - weight(i, current)) / inst.two_m;
                if (!found || gain > best_gain + cfg.tie_tolerance) {
                    found = true;
                    best_gain = gain;
                    best = {i, current, l};
                }
            }
        }
        if (!found) break;
        apply(best.node, best.from, best.to);
        moved[best.node] = true;
        moves.push_back(best);
        cumulative += best_gain;
        if (cumulative > best_total + cfg.tie_tolerance) {
            best_total = cumulative;
            best_prefix = moves.size();
        }
    }

    LocalMoveResult result;
    result.sweeps = 1;
    if (best_total <= cfg.min_gain) {
        result.partition = start;
        return result;
    }
    for (std::size_t k = moves.size(); k > best_prefix; --k) {
        const Move& m = moves[k - 1];
        apply(m.node, m.to, m.from);
    }
    result.partition = Partition(std::move(labels));
    result.delta_q = best_total;
    result.moves = best_prefix;
    return result;
}

namespace {

std::uint64_t restart_seed(std::uint64_t seed, std::size_t run) {
    if (run == 0) return seed;
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * run;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

OptimizationResult single_run(const Graph& g, const NullMatrix& nm, const AggregatedInstance& base,
                              const OptimizerConfig& cfg, std::uint64_t seed) {
    AggregatedInstance inst = base;
    std::mt19937_64 rng(seed);
    OptimizationResult result;

    for (std::size_t round = 0;; ++round) {
        while (true) {
            const std::size_t s = inst.size();
            LocalMoveResult pass = local_move_pass(inst, cfg, Partition::singletons(s), rng);
            LevelRecord record;
            record.super_nodes = s;
            record.communities = pass.partition.community_count();
            record.q = instance_q(inst, pass.partition);
            record.delta_q = pass.delta_q;
            result.trace.push_back(record);
            if (pass.moves == 0 || pass.partition.community_count() == s) break;
            inst = aggregate(inst, pass.partition);
        }
        if (!cfg.refine || round + 1 >= cfg.max_passes) break;

        // Each accepted refinement raises Q by more than min_gain, so this terminates.
        LocalMoveResult refined = refine_pass(base, cfg, Partition(inst.super_of));
        if (refined.moves == 0) break;
        LevelRecord record;
        record.super_nodes = base.size();
        record.communities = refined.partition.community_count();
        record.q = instance_q(base, refined.partition);
        record.delta_q = refined.delta_q;
        result.trace.push_back(record);
        inst = aggregate(base, refined.partition);
    }

    result.partition = Partition(inst.super_of);
    result.q = modularity_q(g, nm, result.partition);
    return result;
}

}  // namespace

OptimizationResult louvain_optimize(const Graph& g, const NullMatrix& nm, const OptimizerConfig& cfg) {
    if (cfg.restarts == 0) throw ValidationError("restarts must be >= 1");
    const AggregatedInstance base = AggregatedInstance::from(g, nm);
    OptimizationResult best = single_run(g, nm, base, cfg, cfg.seed);
    for (std::size_t run = 1; run < cfg.restarts; ++run) {
        OptimizationResult r = single_run(g, nm, base, cfg, restart_seed(cfg.seed, run));
        if (r.q > best.q + cfg.tie_tolerance) best = std::move(r);
    }
    return best;
}

BruteForceResult brute_force_best_partition(const AggregatedInstance& inst) {
    const std::size_t n = inst.size();
    if (n > kBruteForceMaxNodes) {
        throw ValidationError("brute force refuses n = " + std::to_string(n) + " (limit " +
                              std::to_string(kBruteForceMaxNodes) + ")");
    }
    BruteForceResult best;
    if (n == 0) return best;

    std::vector<std::size_t> labels(n, 0), best_labels;
    double best_sum = 0.0;
    bool have_best = false;

    // Restricted growth strings enumerate each set partition once, in
    // lexicographic order of the canonical assignment vector.
    auto recurse = [&](auto&& self, std::size_t i, std::size_t used, double sum) -> void {
        if (i == n) {
            if (!have_best || sum > best_sum + 1e-12 * inst.two_m) {
                best_sum = sum;
                best_labels = labels;
                have_best = true;
            }
            return;
        }
        std::vector<double> to_label(used + 1, 0.0);
        for (std::size_t j = 0; j < i; ++j) to_label[labels[j]] += b_entry(inst, i, j);
        const double self_term = b_entry(inst, i, i);
        for (std::size_t l = 0; l <= used; ++l) {
            labels[i] = l;
            self(self, i + 1, l == used ? used + 1 : used, sum + self_term + 2.0 * to_label[l]);
        }
    };
    recurse(recurse, 0, 0, 0.0);

    best.partition = Partition(best_labels);
    best.q = instance_q(inst, best.partition);
    return best;
}

BruteForceResult brute_force_best_partition(const Graph& g, const NullMatrix& nm) {
    if (g.node_count() > kBruteForceMaxNodes) {
        throw ValidationError("brute force refuses n = " + std::to_string(g.node_count()) + " (limit " +
                              std::to_string(kBruteForceMaxNodes) + ")");
    }
    if (g.node_count() == 0) return {};
    return brute_force_best_partition(AggregatedInstance::from(g, nm));
}

}  // namespace distmod
