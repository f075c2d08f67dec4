#include "distmod/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "distmod/error.hpp"
#include "text_util.hpp"

namespace distmod {

std::uint64_t Graph::adjacency(std::size_t i, std::size_t j) const noexcept {
    const auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Neighbor& a, std::size_t b) { return a.node < b; });
    return (it != r.end() && it->node == j) ? it->count : 0;
}

std::optional<std::size_t> Graph::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

GraphBuilder::GraphBuilder(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) add_node(std::to_string(i));
}

std::size_t GraphBuilder::add_node(const std::string& label) {
    auto [it, inserted] = index_.try_emplace(label, labels_.size());
    if (inserted) labels_.push_back(label);
    return it->second;
}

void GraphBuilder::add_edge(std::size_t i, std::size_t j, std::uint64_t count) {
    if (i >= labels_.size() || j >= labels_.size()) {
        throw ValidationError("edge endpoint out of range");
    }
    if (count == 0) return;
    edges_.push_back({{std::min(i, j), std::max(i, j)}, count});
}

void GraphBuilder::add_edge(const std::string& a, const std::string& b, std::uint64_t count) {
    std::size_t i = add_node(a);
    std::size_t j = add_node(b);
    add_edge(i, j, count);
}

Graph GraphBuilder::build() const {
    Graph g;
    const std::size_t n = labels_.size();
    g.labels_ = labels_;
    g.index_ = index_;

    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> merged;
    for (const auto& [pair, count] : edges_) merged[pair] += count;

    g.rows_.assign(n, {});
    for (const auto& [pair, count] : merged) {
        auto [i, j] = pair;
        if (i == j) {
            g.rows_[i].push_back({i, 2 * count});
        } else {
            g.rows_[i].push_back({j, count});
            g.rows_[j].push_back({i, count});
        }
    }
    g.degrees_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& r = g.rows_[i];
        std::sort(r.begin(), r.end(), [](const Neighbor& a, const Neighbor& b) {
            return a.node < b.node;
        });
        for (const auto& nb : r) g.degrees_[i] += nb.count;
        g.two_m_ += g.degrees_[i];
    }
    return g;
}

Graph load_edge_list(std::istream& in, bool directed_input) {
    GraphBuilder builder;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> arcs;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::vector<std::string> tokens = detail::split_whitespace(line);
        if (tokens.empty()) continue;
        if (tokens.size() < 2 || tokens.size() > 3) {
            throw ParseError(lineno, "expected `src dst [multiplicity]`, got " +
                                         std::to_string(tokens.size()) + " fields");
        }
        std::uint64_t count = 1;
        if (tokens.size() == 3) {
            long long value = 0;
            const std::string& tok = tokens[2];
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (ec != std::errc() || ptr != tok.data() + tok.size()) {
                throw ParseError(lineno, "multiplicity `" + tok + "` is not an integer");
            }
            if (value < 0) {
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": negative multiplicity " + tok);
            }
            count = static_cast<std::uint64_t>(value);
        }
        std::size_t u = builder.add_node(tokens[0]);
        std::size_t v = builder.add_node(tokens[1]);
        if (directed_input) {
            arcs[{u, v}] += count;
        } else {
            builder.add_edge(u, v, count);
        }
    }

    if (directed_input) {
        for (const auto& [arc, count] : arcs) {
            auto [u, v] = arc;
            if (u > v) {
                // Counted from the (v, u) side unless that arc is absent.
                if (arcs.find({v, u}) == arcs.end()) builder.add_edge(u, v, count);
                continue;
            }
            std::uint64_t reverse = 0;
            if (u != v) {
                if (auto it = arcs.find({v, u}); it != arcs.end()) reverse = it->second;
            }
            builder.add_edge(u, v, std::max(count, reverse));
        }
    }
    return builder.build();
}

std::vector<std::uint64_t> degrees(const Graph& g) {
    std::vector<std::uint64_t> k(g.node_count());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = g.degree(i);
    return k;
}

Partition connected_components(const Graph& g) {
    const std::size_t n = g.node_count();
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(n, unset);
    std::vector<std::size_t> stack;
    std::size_t next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] != unset) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (const auto& nb : g.row(u)) {
                if (label[nb.node] == unset) {
                    label[nb.node] = next;
                    stack.push_back(nb.node);
                }
            }
        }
        ++next;
    }
    return Partition(std::move(label));
}

Graph induced_subgraph(const Graph& g, std::span<const std::size_t> keep) {
    GraphBuilder builder;
    std::vector<std::size_t> remap(g.node_count(), static_cast<std::size_t>(-1));
    for (std::size_t idx : keep) remap[idx] = builder.add_node(g.label(idx));
    for (std::size_t idx : keep) {
        for (const auto& nb : g.row(idx)) {
            if (nb.node < idx || remap[nb.node] == static_cast<std::size_t>(-1)) continue;
            std::uint64_t count = (nb.node == idx) ? nb.count / 2 : nb.count;
            builder.add_edge(remap[idx], remap[nb.node], count);
        }
    }
    return builder.build();
}

std::pair<Graph, std::vector<std::size_t>> drop_isolated_nodes(const Graph& g) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (g.degree(i) > 0) keep.push_back(i);
    }
    return {induced_subgraph(g, keep), keep};
}

std::vector<double> NodeAttributes::column(const std::string& name) const {
    auto it = std::find(column_names.begin(), column_names.end(), name);
    if (it == column_names.end()) throw ValidationError("no attribute column `" + name + "`");
    const auto c = static_cast<std::size_t>(it - column_names.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
}

NodeAttributes load_attributes(std::istream& in) {
    NodeAttributes attrs;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        std::vector<std::string> fields = detail::split_csv(line);
        if (!have_header) {
            if (fields.size() < 2) throw ParseError(lineno, "attribute header needs an id column and at least one value column");
            attrs.column_names.assign(fields.begin() + 1, fields.end());
            have_header = true;
            continue;
        }
        if (fields.size() != attrs.column_names.size() + 1) {
            throw ParseError(lineno, "expected " + std::to_string(attrs.column_names.size() + 1) +
                                         " fields, got " + std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size() - 1);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            auto value = detail::parse_double(fields[c]);
            if (!value) throw ParseError(lineno, "`" + fields[c] + "` is not a number");
            if (!std::isfinite(*value)) throw ValidationError("line " + std::to_string(lineno) + ": non-finite attribute value");
            row.push_back(*value);
        }
        attrs.node_labels.push_back(fields[0]);
        attrs.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError(lineno, "attribute file is empty");
    return attrs;
}

NodeAttributes align_attributes(const Graph& g, const NodeAttributes& attrs) {
    if (attrs.node_count() != g.node_count()) {
        throw ValidationError("attribute rows (" + std::to_string(attrs.node_count()) +
                              ") do not match graph nodes (" + std::to_string(g.node_count()) + ")");
    }
    NodeAttributes out;
    out.column_names = attrs.column_names;
    out.node_labels.assign(g.labels().begin(), g.labels().end());
    out.rows.assign(g.node_count(), {});
    std::vector<bool> seen(g.node_count(), false);
    for (std::size_t r = 0; r < attrs.node_count(); ++r) {
        auto idx = g.index_of(attrs.node_labels[r]);
        if (!idx) throw ValidationError("attribute row for unknown node `" + attrs.node_labels[r] + "`");
        if (seen[*idx]) throw ValidationError("duplicate attribute row for node `" + attrs.node_labels[r] + "`");
        seen[*idx] = true;
        out.rows[*idx] = attrs.rows[r];
    }
    return out;
}

}  // namespace distmod
