#include "distmod/modularity.hpp"

#include <cmath>
#include <map>

#include "distmod/error.hpp"

namespace distmod {

namespace {

void check_dims(const Graph& g, const NullMatrix& nm, const Partition& part) {
    if (nm.size() != g.node_count() || part.size() != g.node_count()) {
        throw ValidationError("graph, null matrix and partition sizes differ");
    }
    if (g.two_m() == 0) throw ValidationError("modularity is undefined without edges");
}

}  // namespace

double modularity_q(const Graph& g, const NullMatrix& nm, const Partition& part) {
    check_dims(g, nm, part);
    double intra_a = 0.0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        for (const auto& nb : g.row(i)) {
            if (part[i] == part[nb.node]) intra_a += static_cast<double>(nb.count);
        }
    }
    double intra_p = 0.0;
    for (const auto& members : part.communities()) {
        for (std::size_t i : members) {
            for (std::size_t j : members) intra_p += nm.p_dist(i, j);
        }
    }
    return (intra_a - intra_p) / static_cast<double>(g.two_m());
}

double modularity_q_dense(const Graph& g, const NullMatrix& nm, const Partition& part) {
    check_dims(g, nm, part);
    const std::size_t n = g.node_count();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (part[i] != part[j]) continue;
            sum += static_cast<double>(g.adjacency(i, j)) - nm.p_dist(i, j);
        }
    }
    return sum / static_cast<double>(g.two_m());
}

double modularity_q_sigma_zero(const Graph& g, const Partition& part) {
    if (part.size() != g.node_count()) throw ValidationError("partition size differs from graph");
    if (g.two_m() == 0) throw ValidationError("modularity is undefined without edges");
    double intra = 0.0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        for (const auto& nb : g.row(i)) {
            if (part[i] == part[nb.node]) intra += static_cast<double>(nb.count);
        }
    }
    return intra / static_cast<double>(g.two_m()) - 1.0;
}

PartitionSimilarity compare_partitions(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw ValidationError("partitions have different lengths");
    const std::size_t n = a.size();
    PartitionSimilarity out;
    if (n == 0) {
        out.nmi = out.rand_index = 1.0;
        return out;
    }

    std::map<std::pair<std::size_t, std::size_t>, double> joint;
    std::vector<double> ca(a.community_count(), 0.0), cb(b.community_count(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        joint[{a[i], b[i]}] += 1.0;
        ca[a[i]] += 1.0;
        cb[b[i]] += 1.0;
    }
    const auto total = static_cast<double>(n);

    auto entropy = [total](const std::vector<double>& counts) {
        double h = 0.0;
        for (double c : counts) {
            if (c > 0.0) h -= c / total * std::log(c / total);
        }
        return h;
    };
    double ha = entropy(ca), hb = entropy(cb);
    double mi = 0.0;
    for (const auto& [key, c] : joint) {
        mi += c / total * std::log(c * total / (ca[key.first] * cb[key.second]));
    }
    if (ha + hb == 0.0) {
        out.nmi = 1.0;
    } else {
        out.nmi = std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
    }
    // Identical partitions must score exactly 1 despite rounding in the logs.
    if (a == b) out.nmi = 1.0;

    // Rand index from pair counts: agreements = C(n,2) + 2*sum C(n_ab,2) - sum C(n_a,2) - sum C(n_b,2).
    auto pairs = [](double c) { return c * (c - 1.0) / 2.0; };
    double same_both = 0.0, same_a = 0.0, same_b = 0.0;
    for (const auto& [key, c] : joint) same_both += pairs(c);
    for (double c : ca) same_a += pairs(c);
    for (double c : cb) same_b += pairs(c);
    double all = pairs(total);
    out.rand_index = all == 0.0 ? 1.0 : (all + 2.0 * same_both - same_a - same_b) / all;
    return out;
}

}  // namespace distmod
