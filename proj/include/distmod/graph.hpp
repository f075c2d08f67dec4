#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "distmod/partition.hpp"

namespace distmod {

/// One nonzero entry A_ij of a sparse adjacency row.
struct Neighbor {
    std::size_t node;
    std::uint64_t count;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Undirected multigraph with integer edge multiplicities.
///
/// Self-loops follow the A_ii += 2 convention: each loop adds 2 to A_ii and
/// 2 to k_i, so sum_i k_i = 2m holds uniformly. The graph is immutable once
/// built; use GraphBuilder to construct one.
class Graph {
public:
    Graph() = default;

    std::size_t node_count() const noexcept { return rows_.size(); }
    /// m, the number of edges (each self-loop counts once).
    std::uint64_t edge_count() const noexcept { return two_m_ / 2; }
    std::uint64_t two_m() const noexcept { return two_m_; }

    /// Nonzero entries of row i, sorted by column.
    std::span<const Neighbor> row(std::size_t i) const noexcept { return rows_[i]; }
    std::uint64_t adjacency(std::size_t i, std::size_t j) const noexcept;
    std::uint64_t degree(std::size_t i) const noexcept { return degrees_[i]; }

    std::span<const std::string> labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const noexcept { return labels_[i]; }
    std::optional<std::size_t> index_of(const std::string& label) const;

private:
    friend class GraphBuilder;

    std::vector<std::vector<Neighbor>> rows_;
    std::vector<std::uint64_t> degrees_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::uint64_t two_m_ = 0;
};

/// Accumulates edges and produces a symmetric Graph. Nodes are indexed in
/// first-appearance order.
class GraphBuilder {
public:
    GraphBuilder() = default;
    explicit GraphBuilder(std::size_t n);

    std::size_t add_node(const std::string& label);
    std::size_t node_count() const noexcept { return labels_.size(); }

    /// Adds `count` undirected edges between i and j (a self-loop when i == j).
    void add_edge(std::size_t i, std::size_t j, std::uint64_t count = 1);
    void add_edge(const std::string& a, const std::string& b, std::uint64_t count = 1);

    Graph build() const;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    // Unordered pair (i <= j) -> number of undirected edges.
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::uint64_t>> edges_;
};

/// Parses a whitespace-separated edge list: `src dst [multiplicity]`, with
/// `#` starting a comment. With `directed_input`, lines are read as arcs and
/// the undirected multiplicity of {u, v} is max(arcs u->v, arcs v->u), so a
/// file listing each edge in both directions yields the same graph as one
/// listing it once.
Graph load_edge_list(std::istream& in, bool directed_input = false);

/// k_i = sum_j A_ij.
std::vector<std::uint64_t> degrees(const Graph& g);

/// Components labelled 0..c-1 in order of their smallest node index.
Partition connected_components(const Graph& g);

/// Induced subgraph on `keep` (indices in the original graph), preserving labels.
Graph induced_subgraph(const Graph& g, std::span<const std::size_t> keep);

/// Removes nodes with k_i = 0. Returns the reduced graph and, for each of its
/// nodes, the index in the original graph.
std::pair<Graph, std::vector<std::size_t>> drop_isolated_nodes(const Graph& g);

/// Real-valued attribute vectors, one row per node.
struct NodeAttributes {
    std::vector<std::string> node_labels;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> rows;

    std::size_t node_count() const noexcept { return rows.size(); }
    std::size_t dimension() const noexcept { return column_names.size(); }
    std::vector<double> column(const std::string& name) const;
};

/// CSV with a header row; the first column names the node, the remaining
/// columns are numeric.
NodeAttributes load_attributes(std::istream& in);

/// Reorders attribute rows to the graph's node order. Every graph node must
/// have exactly one row and vice versa.
NodeAttributes align_attributes(const Graph& g, const NodeAttributes& attrs);

}  // namespace distmod
