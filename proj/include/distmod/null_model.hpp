#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distmod/dense_matrix.hpp"
#include "distmod/distance.hpp"
#include "distmod/graph.hpp"

namespace distmod {

enum class DistanceFunctionKind { GaussianPower, Rational, Constant, HardWindow, Learned, CustomTable };

std::string_view to_string(DistanceFunctionKind k);

/// Step function over distance bins: value[b] applies to
/// [edges[b], edges[b+1]), the last bin being closed on the right.
/// Distances outside the table map to 0.
struct DistanceTable {
    std::vector<double> edges;
    std::vector<double> values;
};

/// Decay of interaction strength with distance.
///
///   gaussian-power  exp(-(d/sigma)^r)
///   rational        1 / (1 + (d/sigma)^r)
///   constant        1
///   hard-window     1 if d <= sigma else 0
///   learned/custom  step lookup in `table`
///
/// Unreachable distances map to `unreachable_value()`, the d -> infinity limit.
class DistanceFunction {
public:
    static DistanceFunction gaussian_power(double sigma, double r = 2.0);
    static DistanceFunction rational(double sigma, double r = 2.0);
    static DistanceFunction constant();
    static DistanceFunction hard_window(double sigma);
    static DistanceFunction learned(DistanceTable table, double unreachable_value = 0.0);
    static DistanceFunction custom_table(DistanceTable table, double unreachable_value = 0.0);

    DistanceFunctionKind kind() const noexcept { return kind_; }
    double sigma() const noexcept { return sigma_; }
    double exponent() const noexcept { return r_; }
    const DistanceTable& table() const noexcept { return table_; }
    double unreachable_value() const noexcept { return unreachable_; }

    /// Same kind and exponent with a different field range.
    DistanceFunction with_sigma(double sigma) const;

    double operator()(double d) const;

private:
    DistanceFunctionKind kind_ = DistanceFunctionKind::Constant;
    double sigma_ = 1.0;
    double r_ = 2.0;
    DistanceTable table_;
    double unreachable_ = 1.0;
};

double eval_distance_function(const DistanceFunction& f, double d);

/// Number of linear bins over [0, max finite distance], or explicit edges.
struct BinningConfig {
    std::size_t bins = 10;
    std::vector<double> edges;
};

/// f(d) = (sum over ordered pairs (i, j) with d_ij in the bin of A_ij) / 2m.
/// Includes the diagonal pairs (d_ii = 0). The unreachable value is the same
/// sum over pairs at infinite distance.
DistanceFunction learn_distance_function(const Graph& g, const DistanceMatrix& d,
                                         const BinningConfig& bins);

enum class PowerKind { Degree, Uniform, AttributeColumn, Explicit };

std::string_view to_string(PowerKind k);

/// Node powers N_i, rescaled so that sum_i N_i = 2m.
struct PowerSpec {
    PowerKind kind = PowerKind::Degree;
    std::string source;  // attribute column name or file path, for provenance
    std::vector<double> raw;
    std::vector<double> normalized;
};

/// Degree kind requires k_i > 0 for all nodes; Uniform gives 2m/n;
/// AttributeColumn and Explicit rescale `raw` (all entries > 0) to total 2m.
PowerSpec make_power_spec(const Graph& g, PowerKind kind,
                          std::optional<std::span<const double>> raw = std::nullopt,
                          std::string source = {});

/// Provenance of a null matrix, serialized into every artifact.
struct NullModelSpec {
    PowerKind power = PowerKind::Degree;
    std::string power_source;
    DistanceFunctionKind function = DistanceFunctionKind::Constant;
    std::optional<double> sigma;
    std::optional<double> r;
    std::optional<std::size_t> bins;
    std::string distance_source;
};

/// P~ (row-normalized field products) and its symmetrization P^dist.
struct NullMatrix {
    DenseMatrix p_tilde;
    DenseMatrix p_dist;
    std::vector<double> powers;
    NullModelSpec spec;

    std::size_t size() const noexcept { return p_dist.size(); }
};

/// P~_ij = N_i N_j f(d_ij) / sum_t N_t f(d_ti), P^dist = (P~ + P~^T) / 2.
/// Throws DegenerateFieldError when some denominator is zero.
NullMatrix build_null_matrix(const PowerSpec& powers, const DistanceMatrix& d,
                             const DistanceFunction& f);

/// P_ij = k_i k_j / 2m.
NullMatrix ng_null_matrix(const Graph& g);

/// B = A - P^dist.
DenseMatrix modularity_matrix(const Graph& g, const NullMatrix& nm);

/// Dense copy of the adjacency matrix.
DenseMatrix adjacency_matrix(const Graph& g);

/// Residuals of the invariants a valid null matrix satisfies.
struct NullModelAudit {
    double symmetry_residual = 0.0;   // max |P_ij - P_ji|
    double total_residual = 0.0;      // |sum P - 2m| / 2m
    double row_sum_residual = 0.0;    // max_i |sum_j P~_ij - N_i| / N_i
    double min_entry = 0.0;
};

NullModelAudit audit_null_matrix(const NullMatrix& nm, double two_m);

}  // namespace distmod
