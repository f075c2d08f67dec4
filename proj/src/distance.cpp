#include "distmod/distance.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <vector>

#include "distmod/error.hpp"
#include "text_util.hpp"

namespace distmod {

std::string_view to_string(DistanceSource s) {
    switch (s) {
        case DistanceSource::StructuralRow: return "structural-row";
        case DistanceSource::StructuralHop: return "structural-hop";
        case DistanceSource::Attribute: return "attribute";
        case DistanceSource::File: return "file";
    }
    return "unknown";
}

DistanceMatrix::DistanceMatrix(DenseMatrix d, DistanceSource source)
    : d_(std::move(d)), source_(source) {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (d_(i, i) != 0.0) throw ValidationError("distance diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            double v = d_(i, j);
            if (std::isnan(v) || v < 0.0) {
                throw ValidationError("distance (" + std::to_string(i) + ", " + std::to_string(j) +
                                      ") is negative or NaN");
            }
            if (v != d_(j, i)) throw ValidationError("distance matrix is not symmetric");
        }
    }
}

std::optional<double> DistanceMatrix::min_positive() const {
    std::optional<double> best;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            double v = d_(i, j);
            if (v > 0.0 && std::isfinite(v) && (!best || v < *best)) best = v;
        }
    }
    return best;
}

std::optional<double> DistanceMatrix::max_finite() const {
    std::optional<double> best;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            double v = d_(i, j);
            if (std::isfinite(v) && (!best || v > *best)) best = v;
        }
    }
    return best;
}

DistanceMatrix distance_from_adjacency_rows(const Graph& g, RowMetric metric) {
    const std::size_t n = g.node_count();
    if (n == 0) throw ValidationError("row distances need at least one node");
    DenseMatrix d(n);
    // Merge-walk of two sorted sparse rows.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto a = g.row(i);
            auto b = g.row(j);
            std::size_t p = 0, q = 0;
            double sq = 0.0;
            std::size_t both = 0, either = 0;
            while (p < a.size() || q < b.size()) {
                double x = 0.0, y = 0.0;
                if (q == b.size() || (p < a.size() && a[p].node < b[q].node)) {
                    x = static_cast<double>(a[p++].count);
                } else if (p == a.size() || b[q].node < a[p].node) {
                    y = static_cast<double>(b[q++].count);
                } else {
                    x = static_cast<double>(a[p++].count);
                    y = static_cast<double>(b[q++].count);
                    ++both;
                }
                sq += (x - y) * (x - y);
                ++either;
            }
            double v = 0.0;
            if (metric == RowMetric::Euclidean) {
                v = std::sqrt(sq);
            } else if (either > 0) {
                v = 1.0 - static_cast<double>(both) / static_cast<double>(either);
            }
            d(i, j) = d(j, i) = v;
        }
    }
    return DistanceMatrix(std::move(d), DistanceSource::StructuralRow);
}

DistanceMatrix distance_hop(const Graph& g) {
    const std::size_t n = g.node_count();
    DenseMatrix d(n, kUnreachable);
    std::deque<std::size_t> queue;
    for (std::size_t s = 0; s < n; ++s) {
        auto row = d.row(s);
        row[s] = 0.0;
        queue.assign(1, s);
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (const auto& nb : g.row(u)) {
                if (row[nb.node] == kUnreachable) {
                    row[nb.node] = row[u] + 1.0;
                    queue.push_back(nb.node);
                }
            }
        }
    }
    return DistanceMatrix(std::move(d), DistanceSource::StructuralHop);
}

DistanceMatrix distance_from_attributes(const NodeAttributes& attrs, double order,
                                        std::optional<std::size_t> expected_nodes) {
    if (std::isnan(order) || order < 1.0) {
        throw ValidationError("Minkowski order must be >= 1");
    }
    const std::size_t n = attrs.node_count();
    if (expected_nodes && *expected_nodes != n) {
        throw ValidationError("attribute rows (" + std::to_string(n) +
                              ") do not match graph nodes (" + std::to_string(*expected_nodes) + ")");
    }
    for (const auto& r : attrs.rows) {
        if (r.size() != attrs.dimension()) throw ValidationError("ragged attribute rows");
        for (double v : r) {
            if (!std::isfinite(v)) throw ValidationError("attribute values must be finite");
        }
    }

    DenseMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& x = attrs.rows[i];
            const auto& y = attrs.rows[j];
            double v = 0.0;
            if (std::isinf(order)) {
                for (std::size_t c = 0; c < x.size(); ++c) v = std::max(v, std::abs(x[c] - y[c]));
            } else if (order == 1.0) {
                for (std::size_t c = 0; c < x.size(); ++c) v += std::abs(x[c] - y[c]);
            } else if (order == 2.0) {
                for (std::size_t c = 0; c < x.size(); ++c) v += (x[c] - y[c]) * (x[c] - y[c]);
                v = std::sqrt(v);
            } else {
                for (std::size_t c = 0; c < x.size(); ++c) v += std::pow(std::abs(x[c] - y[c]), order);
                v = std::pow(v, 1.0 / order);
            }
            d(i, j) = d(j, i) = v;
        }
    }
    return DistanceMatrix(std::move(d), DistanceSource::Attribute);
}

namespace {

std::size_t resolve_node(const std::string& token, std::size_t n, const Graph* g,
                         std::size_t lineno) {
    if (g != nullptr) {
        if (auto idx = g->index_of(token)) return *idx;
        throw ParseError(lineno, "unknown node `" + token + "`");
    }
    std::size_t idx = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), idx);
    if (ec != std::errc() || ptr != token.data() + token.size() || idx >= n) {
        throw ParseError(lineno, "node `" + token + "` is not an index below " + std::to_string(n));
    }
    return idx;
}

double parse_entry(const std::string& field, std::size_t lineno) {
    auto v = detail::parse_double(field);
    if (!v || std::isnan(*v)) throw ParseError(lineno, "`" + field + "` is not a number");
    if (*v < 0.0) {
        throw ValidationError("line " + std::to_string(lineno) + ": negative distance " + field);
    }
    return *v;
}

bool within_symmetry_tolerance(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

DistanceMatrix load_distance_file(std::istream& in, std::size_t n, const Graph* g,
                                  DistanceFileFormat format) {
    if (g != nullptr && g->node_count() != n) {
        throw ValidationError("distance file node count does not match graph");
    }
    struct Line {
        std::size_t number;
        std::vector<std::string> fields;
    };
    std::vector<Line> lines;
    std::string text;
    std::size_t lineno = 0;
    while (std::getline(in, text)) {
        ++lineno;
        if (detail::trim(text).empty() || detail::trim(text).front() == '#') continue;
        lines.push_back({lineno, detail::split_csv(text)});
    }

    if (format == DistanceFileFormat::Auto) {
        bool dense = lines.size() == n + 1 &&
                     std::all_of(lines.begin(), lines.end(),
                                 [n](const Line& l) { return l.fields.size() == n; });
        format = dense ? DistanceFileFormat::Dense : DistanceFileFormat::Triplet;
    }

    DenseMatrix raw(n, kUnreachable);
    std::vector<bool> given(n * n, false);

    if (format == DistanceFileFormat::Dense) {
        if (lines.size() != n + 1) {
            throw ValidationError("dense distance file needs a header and " + std::to_string(n) +
                                  " rows, found " + std::to_string(lines.size()) + " lines");
        }
        std::vector<std::size_t> order;
        for (const auto& label : lines[0].fields) {
            order.push_back(resolve_node(label, n, g, lines[0].number));
        }
        if (order.size() != n) throw ParseError(lines[0].number, "header must list every node");
        std::vector<bool> seen(n, false);
        for (std::size_t idx : order) {
            if (seen[idx]) throw ParseError(lines[0].number, "duplicate node in header");
            seen[idx] = true;
        }
        for (std::size_t r = 0; r < n; ++r) {
            const Line& l = lines[r + 1];
            if (l.fields.size() != n) {
                throw ParseError(l.number, "expected " + std::to_string(n) + " values");
            }
            for (std::size_t c = 0; c < n; ++c) {
                raw(order[r], order[c]) = parse_entry(l.fields[c], l.number);
                given[order[r] * n + order[c]] = true;
            }
        }
    } else {
        for (const auto& l : lines) {
            if (l.fields.size() != 3) throw ParseError(l.number, "expected `i,j,d`");
            std::size_t i = resolve_node(l.fields[0], n, g, l.number);
            std::size_t j = resolve_node(l.fields[1], n, g, l.number);
            if (given[i * n + j]) throw ParseError(l.number, "pair listed twice");
            raw(i, j) = parse_entry(l.fields[2], l.number);
            given[i * n + j] = true;
        }
    }

    DenseMatrix d(n, kUnreachable);
    for (std::size_t i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            bool fwd = given[i * n + j];
            bool back = given[j * n + i];
            double v = kUnreachable;
            if (fwd && back) {
                double a = raw(i, j), b = raw(j, i);
                if (!within_symmetry_tolerance(a, b)) {
                    throw ValidationError("distance file is not symmetric at (" + std::to_string(i) +
                                          ", " + std::to_string(j) + ")");
                }
                v = std::isinf(a) ? a : (a + b) / 2.0;
            } else if (fwd) {
                v = raw(i, j);
            } else if (back) {
                v = raw(j, i);
            }
            d(i, j) = d(j, i) = v;
        }
    }
    return DistanceMatrix(std::move(d), DistanceSource::File);
}

}  // namespace distmod
