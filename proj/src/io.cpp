#include "distmod/io.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "text_util.hpp"

namespace distmod::io {

using nlohmann::ordered_json;

namespace {

ordered_json spec_object(const NullModelSpec& spec) {
    ordered_json j;
    j["power"] = std::string(to_string(spec.power));
    if (!spec.power_source.empty()) j["power_source"] = spec.power_source;
    j["f"] = std::string(to_string(spec.function));
    j["sigma"] = spec.sigma ? ordered_json(*spec.sigma) : ordered_json(nullptr);
    j["r"] = spec.r ? ordered_json(*spec.r) : ordered_json(nullptr);
    j["bins"] = spec.bins ? ordered_json(*spec.bins) : ordered_json(nullptr);
    j["distance_source"] = spec.distance_source;
    return j;
}

// Labels may contain commas; quote them per RFC 4180 when they do.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return detail::format_double(v);
}

std::string null_spec_json(const NullModelSpec& spec) {
    return spec_object(spec).dump(2) + "\n";
}

std::string partition_json(const Partition& part, double q, std::optional<double> sigma,
                           const NullModelSpec& spec, std::uint64_t seed) {
    ordered_json j;
    j["labels"] = std::vector<std::size_t>(part.labels().begin(), part.labels().end());
    j["q"] = q;
    j["sigma"] = sigma ? ordered_json(*sigma) : ordered_json(nullptr);
    j["spec"] = spec_object(spec);
    j["seed"] = seed;
    return j.dump() + "\n";
}

std::string matrix_csv(const DenseMatrix& m, const Graph& g) {
    std::string out;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (i) out += ',';
        out += csv_field(g.label(i));
    }
    out += '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string audit_json(const NullModelAudit& audit) {
    ordered_json j;
    j["symmetry_residual"] = audit.symmetry_residual;
    j["total_residual"] = audit.total_residual;
    j["row_sum_residual"] = audit.row_sum_residual;
    j["min_entry"] = audit.min_entry;
    return j.dump(2) + "\n";
}

std::string trace_jsonl(const std::vector<LevelRecord>& trace) {
    std::string out;
    for (std::size_t level = 0; level < trace.size(); ++level) {
        ordered_json j;
        j["level"] = level;
        j["super_nodes"] = trace[level].super_nodes;
        j["communities"] = trace[level].communities;
        j["q"] = trace[level].q;
        out += j.dump() + "\n";
    }
    return out;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = "sigma,q,c,nmi_prev,nmi_ng\n";
    for (const auto& r : result.records) {
        out += format_double(r.sigma) + ',' + format_double(r.q) + ',' + std::to_string(r.communities) +
               ',' + (r.nmi_prev ? format_double(*r.nmi_prev) : std::string("nan")) + ',' +
               format_double(r.nmi_ng) + '\n';
    }
    return out;
}

std::string sample_csv(const SampleBatch& batch, const Graph& g) {
    std::string out = "i,j,p_expected,p_empirical,n_samples\n";
    const std::size_t n = batch.expected.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            out += csv_field(g.label(i)) + ',' + csv_field(g.label(j)) + ',' +
                   format_double(batch.expected(i, j)) + ',' + format_double(batch.empirical_mean(i, j)) +
                   ',' + std::to_string(batch.count) + '\n';
        }
    }
    return out;
}

std::string nodes_csv(const Graph& g) {
    std::string out = "index,label\n";
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        out += std::to_string(i) + ',' + csv_field(g.label(i)) + '\n';
    }
    return out;
}

}  // namespace distmod::io
