#include "distmod/null_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "distmod/error.hpp"

namespace distmod {

std::string_view to_string(DistanceFunctionKind k) {
    switch (k) {
        case DistanceFunctionKind::GaussianPower: return "gaussian-power";
        case DistanceFunctionKind::Rational: return "rational";
        case DistanceFunctionKind::Constant: return "constant";
        case DistanceFunctionKind::HardWindow: return "hard-window";
        case DistanceFunctionKind::Learned: return "learned";
        case DistanceFunctionKind::CustomTable: return "custom-table";
    }
    return "unknown";
}

std::string_view to_string(PowerKind k) {
    switch (k) {
        case PowerKind::Degree: return "degree";
        case PowerKind::Uniform: return "uniform";
        case PowerKind::AttributeColumn: return "attribute-column";
        case PowerKind::Explicit: return "explicit";
    }
    return "unknown";
}

namespace {

void check_sigma(double sigma) {
    if (!(sigma > 0.0) || std::isinf(sigma)) throw ValidationError("sigma must be positive and finite");
}

void check_exponent(double r) {
    if (!(r > 0.0) || std::isinf(r)) throw ValidationError("r must be positive and finite");
}

void check_table(const DistanceTable& t) {
    if (t.values.empty() || t.edges.size() != t.values.size() + 1) {
        throw ValidationError("distance table needs one more edge than values");
    }
    if (!std::is_sorted(t.edges.begin(), t.edges.end())) {
        throw ValidationError("distance table edges must be nondecreasing");
    }
    for (double v : t.values) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError("distance table values must be finite and >= 0");
    }
}

// Bin of d in a step table, or nothing when d lies outside [front, back].
std::optional<std::size_t> bin_index(const std::vector<double>& edges, double d) {
    if (d < edges.front() || d > edges.back()) return std::nullopt;
    auto it = std::upper_bound(edges.begin(), edges.end(), d);
    auto bin = static_cast<std::size_t>(it - edges.begin());
    return std::min(bin == 0 ? 0 : bin - 1, edges.size() - 2);
}

// exp(-x) is exactly 0 in double precision beyond this point.
constexpr double kMaxExponent = 745.0;

}  // namespace

DistanceFunction DistanceFunction::gaussian_power(double sigma, double r) {
    check_sigma(sigma);
    check_exponent(r);
    DistanceFunction f;
    f.kind_ = DistanceFunctionKind::GaussianPower;
    f.sigma_ = sigma;
    f.r_ = r;
    f.unreachable_ = 0.0;
    return f;
}

DistanceFunction DistanceFunction::rational(double sigma, double r) {
    check_sigma(sigma);
    check_exponent(r);
    DistanceFunction f;
    f.kind_ = DistanceFunctionKind::Rational;
    f.sigma_ = sigma;
    f.r_ = r;
    f.unreachable_ = 0.0;
    return f;
}

DistanceFunction DistanceFunction::constant() {
    DistanceFunction f;
    f.kind_ = DistanceFunctionKind::Constant;
    f.unreachable_ = 1.0;
    return f;
}

DistanceFunction DistanceFunction::hard_window(double sigma) {
    check_sigma(sigma);
    DistanceFunction f;
    f.kind_ = DistanceFunctionKind::HardWindow;
    f.sigma_ = sigma;
    f.unreachable_ = 0.0;
    return f;
}

DistanceFunction DistanceFunction::learned(DistanceTable table, double unreachable_value) {
    check_table(table);
    DistanceFunction f;
    f.kind_ = DistanceFunctionKind::Learned;
    f.table_ = std::move(table);
    f.unreachable_ = unreachable_value;
    return f;
}

DistanceFunction DistanceFunction::custom_table(DistanceTable table, double unreachable_value) {
    DistanceFunction f = learned(std::move(table), unreachable_value);
    f.kind_ = DistanceFunctionKind::CustomTable;
    return f;
}

DistanceFunction DistanceFunction::with_sigma(double sigma) const {
    switch (kind_) {
        case DistanceFunctionKind::GaussianPower: return gaussian_power(sigma, r_);
        case DistanceFunctionKind::Rational: return rational(sigma, r_);
        case DistanceFunctionKind::HardWindow: return hard_window(sigma);
        default: throw ValidationError(std::string(to_string(kind_)) + " has no field range parameter");
    }
}

double DistanceFunction::operator()(double d) const {
    if (std::isinf(d)) return unreachable_;
    switch (kind_) {
        case DistanceFunctionKind::GaussianPower: {
            double x = std::pow(d / sigma_, r_);
            return x > kMaxExponent ? 0.0 : std::exp(-x);
        }
        case DistanceFunctionKind::Rational:
            return 1.0 / (1.0 + std::pow(d / sigma_, r_));
        case DistanceFunctionKind::Constant:
            return 1.0;
        case DistanceFunctionKind::HardWindow:
            return d <= sigma_ ? 1.0 : 0.0;
        case DistanceFunctionKind::Learned:
        case DistanceFunctionKind::CustomTable: {
            auto bin = bin_index(table_.edges, d);
            return bin ? table_.values[*bin] : 0.0;
        }
    }
    return 0.0;
}

double eval_distance_function(const DistanceFunction& f, double d) {
    if (std::isnan(d) || d < 0.0) throw ValidationError("distance must be >= 0");
    return f(d);
}

DistanceFunction learn_distance_function(const Graph& g, const DistanceMatrix& d,
                                         const BinningConfig& bins) {
    const std::size_t n = g.node_count();
    if (d.size() != n) throw ValidationError("distance matrix does not match graph");
    if (g.two_m() == 0) throw ValidationError("cannot learn f(d) from a graph without edges");
    auto max_d = d.max_finite();
    if (!max_d) throw ValidationError("no finite off-diagonal distance to learn f(d) from");

    DistanceTable table;
    if (!bins.edges.empty()) {
        table.edges = bins.edges;
        if (table.edges.size() < 2) throw ValidationError("explicit bin edges need at least two entries");
    } else {
        if (bins.bins == 0) throw ValidationError("bins must be >= 1");
        std::size_t count = *max_d > 0.0 ? bins.bins : 1;
        for (std::size_t b = 0; b <= count; ++b) {
            table.edges.push_back(*max_d * static_cast<double>(b) / static_cast<double>(count));
        }
    }
    if (!std::is_sorted(table.edges.begin(), table.edges.end())) {
        throw ValidationError("bin edges must be nondecreasing");
    }
    table.values.assign(table.edges.size() - 1, 0.0);
    std::vector<double> sums(table.values.size(), 0.0);
    double unreachable_sum = 0.0;
    // Ordered pairs, so each undirected edge contributes from both ends.
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& nb : g.row(i)) {
            double dij = d(i, nb.node);
            auto a = static_cast<double>(nb.count);
            if (std::isinf(dij)) {
                unreachable_sum += a;
                continue;
            }
            if (auto bin = bin_index(table.edges, dij)) sums[*bin] += a;
        }
    }
    const auto two_m = static_cast<double>(g.two_m());
    for (std::size_t b = 0; b < sums.size(); ++b) table.values[b] = sums[b] / two_m;
    return DistanceFunction::learned(std::move(table), unreachable_sum / two_m);
}

PowerSpec make_power_spec(const Graph& g, PowerKind kind,
                          std::optional<std::span<const double>> raw, std::string source) {
    const std::size_t n = g.node_count();
    if (g.two_m() == 0) throw ValidationError("node powers need a graph with at least one edge");
    const auto two_m = static_cast<double>(g.two_m());

    PowerSpec spec;
    spec.kind = kind;
    spec.source = std::move(source);
    switch (kind) {
        case PowerKind::Degree:
            for (std::size_t i = 0; i < n; ++i) {
                if (g.degree(i) == 0) {
                    throw ValidationError("node `" + g.label(i) +
                                          "` is isolated; degree powers need k_i > 0 (drop isolated nodes first)");
                }
                spec.raw.push_back(static_cast<double>(g.degree(i)));
            }
            spec.normalized = spec.raw;
            return spec;
        case PowerKind::Uniform:
            spec.raw.assign(n, 1.0);
            spec.normalized.assign(n, two_m / static_cast<double>(n));
            return spec;
        case PowerKind::AttributeColumn:
        case PowerKind::Explicit:
            break;
    }
    if (!raw) throw ValidationError("this power kind needs raw values");
    if (raw->size() != n) throw ValidationError("raw power vector does not match node count");
    spec.raw.assign(raw->begin(), raw->end());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = spec.raw[i];
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ValidationError("power of node " + std::to_string(i) + " must be positive and finite");
        }
        total += v;
    }
    spec.normalized.resize(n);
    for (std::size_t i = 0; i < n; ++i) spec.normalized[i] = spec.raw[i] / total * two_m;
    return spec;
}

NullMatrix build_null_matrix(const PowerSpec& powers, const DistanceMatrix& d,
                             const DistanceFunction& f) {
    const std::size_t n = d.size();
    const auto& N = powers.normalized;
    if (N.size() != n) throw ValidationError("power vector does not match distance matrix");

    DenseMatrix fd(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) fd(i, j) = fd(j, i) = f(d(i, j));
    }

    NullMatrix nm;
    nm.p_tilde = DenseMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Superposed potential at i; fd is symmetric so row i serves for f(d_ti).
        double field = 0.0;
        for (std::size_t t = 0; t < n; ++t) field += N[t] * fd(i, t);
        if (!(field > 0.0)) throw DegenerateFieldError(i);
        for (std::size_t j = 0; j < n; ++j) nm.p_tilde(i, j) = N[i] * N[j] * fd(i, j) / field;
    }

    nm.p_dist = DenseMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double v = (nm.p_tilde(i, j) + nm.p_tilde(j, i)) / 2.0;
            nm.p_dist(i, j) = nm.p_dist(j, i) = v;
        }
    }
    nm.powers = N;
    nm.spec.power = powers.kind;
    nm.spec.power_source = powers.source;
    nm.spec.function = f.kind();
    switch (f.kind()) {
        case DistanceFunctionKind::GaussianPower:
        case DistanceFunctionKind::Rational:
            nm.spec.sigma = f.sigma();
            nm.spec.r = f.exponent();
            break;
        case DistanceFunctionKind::HardWindow:
            nm.spec.sigma = f.sigma();
            break;
        case DistanceFunctionKind::Learned:
        case DistanceFunctionKind::CustomTable:
            nm.spec.bins = f.table().values.size();
            break;
        case DistanceFunctionKind::Constant:
            break;
    }
    nm.spec.distance_source = std::string(to_string(d.source()));
    return nm;
}

NullMatrix ng_null_matrix(const Graph& g) {
    if (g.two_m() == 0) throw ValidationError("NG null model needs at least one edge");
    const std::size_t n = g.node_count();
    const auto two_m = static_cast<double>(g.two_m());
    NullMatrix nm;
    nm.p_dist = DenseMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto ki = static_cast<double>(g.degree(i));
        for (std::size_t j = 0; j < n; ++j) {
            nm.p_dist(i, j) = ki * static_cast<double>(g.degree(j)) / two_m;
        }
    }
    nm.p_tilde = nm.p_dist;
    for (std::size_t i = 0; i < n; ++i) nm.powers.push_back(static_cast<double>(g.degree(i)));
    nm.spec.power = PowerKind::Degree;
    nm.spec.function = DistanceFunctionKind::Constant;
    nm.spec.distance_source = "none";
    return nm;
}

DenseMatrix adjacency_matrix(const Graph& g) {
    DenseMatrix a(g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        for (const auto& nb : g.row(i)) a(i, nb.node) = static_cast<double>(nb.count);
    }
    return a;
}

DenseMatrix modularity_matrix(const Graph& g, const NullMatrix& nm) {
    if (nm.size() != g.node_count()) throw ValidationError("null matrix does not match graph");
    DenseMatrix b = adjacency_matrix(g);
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) b(i, j) -= nm.p_dist(i, j);
    }
    return b;
}

NullModelAudit audit_null_matrix(const NullMatrix& nm, double two_m) {
    NullModelAudit a;
    const std::size_t n = nm.size();
    a.min_entry = n > 0 ? nm.p_dist(0, 0) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            a.symmetry_residual = std::max(a.symmetry_residual, std::abs(nm.p_dist(i, j) - nm.p_dist(j, i)));
            a.min_entry = std::min(a.min_entry, nm.p_dist(i, j));
            row += nm.p_tilde(i, j);
        }
        if (nm.powers[i] > 0.0) {
            a.row_sum_residual = std::max(a.row_sum_residual, std::abs(row - nm.powers[i]) / nm.powers[i]);
        }
    }
    a.total_residual = std::abs(nm.p_dist.total() - two_m) / two_m;
    return a;
}

}  // namespace distmod
