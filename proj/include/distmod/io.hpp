#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "distmod/dense_matrix.hpp"
#include "distmod/graph.hpp"
#include "distmod/multiscale.hpp"
#include "distmod/null_model.hpp"
#include "distmod/optimizer.hpp"
#include "distmod/partition.hpp"
#include "distmod/sampler.hpp"

// Text renderings of every artifact the CLI writes. All functions are pure and
// deterministic so that replayed runs produce byte-identical files.
namespace distmod::io {

std::string null_spec_json(const NullModelSpec& spec);

/// {"labels": [...], "q": ..., "sigma": ... | null, "spec": {...}, "seed": ...}
std::string partition_json(const Partition& part, double q, std::optional<double> sigma,
                           const NullModelSpec& spec, std::uint64_t seed);

/// Dense CSV: header row of node labels, then one row per node.
std::string matrix_csv(const DenseMatrix& m, const Graph& g);

std::string audit_json(const NullModelAudit& audit);

/// One JSON object per line: {"level", "super_nodes", "communities", "q"}.
std::string trace_jsonl(const std::vector<LevelRecord>& trace);

/// Columns sigma,q,c,nmi_prev,nmi_ng.
std::string sweep_csv(const SweepResult& result);

/// Columns i,j,p_expected,p_empirical,n_samples over pairs i <= j.
std::string sample_csv(const SampleBatch& batch, const Graph& g);

std::string nodes_csv(const Graph& g);

std::string format_double(double v);

}  // namespace distmod::io
