#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paperrank/meta.hpp"
#include "paperrank/ranking.hpp"

namespace paperrank {

/// r_j per author: each paper's score split equally among its authors.
/// `total` is the sum of the contributing paper scores, which equals the
/// sum of all ranks (conservation).
struct AuthorRankTable {
    std::map<std::string, double> ranks;
    double total = 0.0;
};

struct JournalEntry {
    double rank = 0.0;
    std::size_t paper_count = 0;
    std::optional<double> average; //< rank / paper_count; empty iff count 0
};

/// ell_k per journal: the summed score of its papers, plus the per-paper
/// average importance. Journals with no contributing paper are absent.
struct JournalRankTable {
    std::map<std::string, JournalEntry> journals;
    double total = 0.0;
};

namespace detail {

/// Meta records indexed by paper id; every paper in [0, n) must be covered
/// exactly once.
inline std::vector<const PaperMeta*> index_meta(std::size_t n,
                                                std::span<const PaperMeta> meta) {
    std::vector<const PaperMeta*> by_id(n, nullptr);
    for (const PaperMeta& m : meta) {
        if (m.paper >= n) continue; // records beyond the scored range are inert
        if (by_id[m.paper])
            throw std::invalid_argument("duplicate metadata for paper " +
                                        std::to_string(m.paper));
        by_id[m.paper] = &m;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!by_id[i])
            throw std::invalid_argument("missing metadata for paper " +
                                        std::to_string(i));
    return by_id;
}

} // namespace detail

/// Author ranks r_j = sum over the author's papers of v_i / n_i. With a
/// window only papers dated inside it contribute. Rejects a contributing
/// paper whose author set is empty (the split divides by n_i).
inline AuthorRankTable author_ranks(const RankVector& v,
                                    std::span<const PaperMeta> meta,
                                    std::optional<TimeWindow> window = {}) {
    const auto by_id = detail::index_meta(v.size(), meta);
    AuthorRankTable table;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const PaperMeta& m = *by_id[i];
        if (window && !window->contains(m.date)) continue;
        if (m.authors.empty())
            throw std::invalid_argument("paper " + std::to_string(i) +
                                        " has no authors");
        const double share =
            v.scores[i] / static_cast<double>(m.authors.size());
        for (const std::string& a : m.authors) table.ranks[a] += share;
        table.total += v.scores[i];
    }
    return table;
}

/// Journal ranks ell_k = sum of member paper scores, with paper counts and
/// average importance ell_k / n_k. Windowed counts n_k(t,nu) when a window
/// is given. Rejects a contributing paper without a journal assignment.
inline JournalRankTable journal_ranks(const RankVector& v,
                                      std::span<const PaperMeta> meta,
                                      std::optional<TimeWindow> window = {}) {
    const auto by_id = detail::index_meta(v.size(), meta);
    JournalRankTable table;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const PaperMeta& m = *by_id[i];
        if (window && !window->contains(m.date)) continue;
        if (m.journal.empty())
            throw std::invalid_argument("paper " + std::to_string(i) +
                                        " has no journal assignment");
        JournalEntry& entry = table.journals[m.journal];
        entry.rank += v.scores[i];
        entry.paper_count += 1;
        table.total += v.scores[i];
    }
    for (auto& [name, entry] : table.journals)
        if (entry.paper_count > 0)
            entry.average = entry.rank / static_cast<double>(entry.paper_count);
    return table;
}

} // namespace paperrank
