#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace paperrank {

/// Dense paper identifier; every id is < n_papers of the owning graph.
using PaperId = std::uint32_t;

/// One citation: `citing` lists `cited` in its bibliography.
struct Edge {
    PaperId citing;
    PaperId cited;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable sparse citation graph, adjacency kept in both directions.
///
/// cites(j) is column j of the 0/1 citation matrix (the papers j references),
/// cited_by(i) is row i (the papers citing i). Entries are deduplicated and
/// sorted; self-loops are never stored. The model-level convention that every
/// paper references itself is applied by the ranking layer, not here.
///
/// Safe for concurrent reads after construction.
class CitationGraph {
public:
    CitationGraph() = default;

    /// Builds the graph from an edge list. Duplicate edges collapse to one,
    /// input self-loops are dropped (see dropped_self_loops()). Throws
    /// std::invalid_argument when an edge references an id >= n_papers.
    CitationGraph(std::size_t n_papers, std::span<const Edge> edges)
        : n_(n_papers) {
        std::vector<Edge> kept;
        kept.reserve(edges.size());
        for (const Edge& e : edges) {
            if (e.citing >= n_ || e.cited >= n_) {
                throw std::invalid_argument(
                    "edge (" + std::to_string(e.citing) + "," +
                    std::to_string(e.cited) + ") references a paper id >= " +
                    std::to_string(n_));
            }
            if (e.citing == e.cited) {
                ++dropped_self_loops_;
                continue;
            }
            kept.push_back(e);
        }
        std::sort(kept.begin(), kept.end(), [](const Edge& a, const Edge& b) {
            return a.citing < b.citing ||
                   (a.citing == b.citing && a.cited < b.cited);
        });
        kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

        out_offsets_.assign(n_ + 1, 0);
        in_offsets_.assign(n_ + 1, 0);
        for (const Edge& e : kept) {
            ++out_offsets_[e.citing + 1];
            ++in_offsets_[e.cited + 1];
        }
        for (std::size_t i = 1; i <= n_; ++i) {
            out_offsets_[i] += out_offsets_[i - 1];
            in_offsets_[i] += in_offsets_[i - 1];
        }
        out_targets_.resize(kept.size());
        in_sources_.resize(kept.size());
        std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
        std::size_t k = 0;
        for (const Edge& e : kept) {
            out_targets_[k++] = e.cited;
            in_sources_[cursor[e.cited]++] = e.citing; // ascending by citing
        }
    }

    std::size_t n_papers() const { return n_; }
    std::size_t n_edges() const { return out_targets_.size(); }

    /// Number of input self-loop edges discarded during construction.
    std::size_t dropped_self_loops() const { return dropped_self_loops_; }

    /// Papers referenced by j (sorted, no duplicates, never contains j).
    std::span<const PaperId> cites(PaperId j) const {
        return {out_targets_.data() + out_offsets_[j],
                out_targets_.data() + out_offsets_[j + 1]};
    }

    /// Papers whose bibliography contains i (sorted).
    std::span<const PaperId> cited_by(PaperId i) const {
        return {in_sources_.data() + in_offsets_[i],
                in_sources_.data() + in_offsets_[i + 1]};
    }

    std::size_t out_degree(PaperId j) const {
        return out_offsets_[j + 1] - out_offsets_[j];
    }

    std::size_t in_degree(PaperId i) const {
        return in_offsets_[i + 1] - in_offsets_[i];
    }

    friend bool operator==(const CitationGraph& a, const CitationGraph& b) {
        return a.n_ == b.n_ && a.out_offsets_ == b.out_offsets_ &&
               a.out_targets_ == b.out_targets_;
    }

private:
    std::size_t n_ = 0;
    std::size_t dropped_self_loops_ = 0;
    std::vector<std::size_t> out_offsets_{0};
    std::vector<std::size_t> in_offsets_{0};
    std::vector<PaperId> out_targets_;
    std::vector<PaperId> in_sources_;
};

/// Builds a graph from (citing, cited) pairs; see the CitationGraph ctor.
inline CitationGraph build_graph(std::size_t n_papers,
                                 std::span<const Edge> edges) {
    return CitationGraph(n_papers, edges);
}

/// Citation counts c = L e on the raw matrix (no implicit self-loops):
/// entry i is the number of distinct papers citing paper i.
inline std::vector<std::uint32_t> bare_citations(const CitationGraph& g) {
    std::vector<std::uint32_t> c(g.n_papers());
    for (PaperId i = 0; i < g.n_papers(); ++i)
        c[i] = static_cast<std::uint32_t>(g.in_degree(i));
    return c;
}

/// Reference counts f = e^T L: entry j is the bibliography length of paper j.
/// With `with_self_loop` each paper additionally counts itself, so every
/// entry is >= 1 (the convention that makes S = L F^{-1} column-stochastic).
inline std::vector<std::uint32_t> reference_counts(const CitationGraph& g,
                                                   bool with_self_loop) {
    std::vector<std::uint32_t> f(g.n_papers());
    for (PaperId j = 0; j < g.n_papers(); ++j)
        f[j] = static_cast<std::uint32_t>(g.out_degree(j) +
                                          (with_self_loop ? 1 : 0));
    return f;
}

} // namespace paperrank
