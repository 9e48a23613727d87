#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "paperrank/block_model.hpp"
#include "paperrank/citation_graph.hpp"
#include "paperrank/meta.hpp"

namespace paperrank {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered `# key: value` comment lines written ahead of a column header.
using FileComments = std::vector<std::pair<std::string, std::string>>;

namespace detail {

/// Shortest round-trip decimal representation, locale independent.
inline std::string fmt_double(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, p);
}

inline double parse_double(std::string_view s, const std::string& where) {
    double x = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw IoError("malformed number '" + std::string(s) + "' in " + where);
    return x;
}

inline std::int64_t parse_int(std::string_view s, const std::string& where) {
    std::int64_t x = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw IoError("malformed integer '" + std::string(s) + "' in " + where);
    return x;
}

/// RFC-4180 style quoting, applied only when needed.
inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void write_comments(std::ostream& os, const FileComments& comments) {
    for (const auto& [key, value] : comments) os << "# " << key << ": " << value << "\n";
}

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

struct ParsedFile {
    std::map<std::string, std::string> header;
    std::vector<std::string> rows; // data lines, column header consumed
};

/// Reads a CSV-with-comments file: leading/interleaved `# key: value` lines
/// land in `header`, the first non-comment line must equal `columns`.
inline ParsedFile read_csv(const std::string& path, std::string_view columns) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    ParsedFile out;
    std::string line;
    bool saw_columns = false;
    while (std::getline(in, line)) {
        std::string_view sv = strip_cr(line);
        if (sv.empty()) continue;
        if (sv.front() == '#') {
            std::string_view body = sv.substr(1);
            if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
            const auto colon = body.find(':');
            if (colon != std::string_view::npos) {
                std::string key(body.substr(0, colon));
                std::string_view val = body.substr(colon + 1);
                if (!val.empty() && val.front() == ' ') val.remove_prefix(1);
                out.header.emplace(std::move(key), std::string(val));
            }
            continue;
        }
        if (!saw_columns) {
            if (sv != columns)
                throw IoError("'" + path + "': expected column header '" +
                              std::string(columns) + "', got '" + std::string(sv) + "'");
            saw_columns = true;
            continue;
        }
        out.rows.emplace_back(sv);
    }
    if (!saw_columns)
        throw IoError("'" + path + "': missing column header '" +
                      std::string(columns) + "'");
    return out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // LF line endings everywhere
    if (!out) throw IoError("cannot write '" + path + "'");
    return out;
}

} // namespace detail

// --- edge lists -----------------------------------------------------------

inline void write_edge_list(const std::string& path, const CitationGraph& g,
                            const FileComments& comments = {}) {
    auto out = detail::open_out(path);
    detail::write_comments(out, comments);
    out << "citing_id,cited_id\n";
    for (PaperId j = 0; j < g.n_papers(); ++j)
        for (PaperId i : g.cites(j)) out << j << ',' << i << '\n';
}

struct EdgeListFile {
    CitationGraph graph;
    std::map<std::string, std::string> header;
};

/// Reads a `citing_id,cited_id` file. The paper count is, in order of
/// precedence: the explicit override, the file's own `# n-papers:` record,
/// or 1 + the largest id seen.
inline EdgeListFile read_edge_list(const std::string& path,
                                   std::optional<std::size_t> n_override = {}) {
    auto parsed = detail::read_csv(path, "citing_id,cited_id");
    std::vector<Edge> edges;
    edges.reserve(parsed.rows.size());
    std::int64_t max_id = -1;
    for (const std::string& row : parsed.rows) {
        const auto parts = detail::split(row, ',');
        if (parts.size() != 2) throw IoError("'" + path + "': malformed row '" + row + "'");
        const auto citing = detail::parse_int(parts[0], path);
        const auto cited = detail::parse_int(parts[1], path);
        if (citing < 0 || cited < 0)
            throw IoError("'" + path + "': negative paper id in row '" + row + "'");
        max_id = std::max({max_id, citing, cited});
        edges.push_back(Edge{static_cast<PaperId>(citing), static_cast<PaperId>(cited)});
    }
    std::size_t n = static_cast<std::size_t>(max_id + 1);
    if (auto it = parsed.header.find("n-papers"); it != parsed.header.end()) {
        const auto recorded = detail::parse_int(it->second, path);
        if (recorded < 0)
            throw IoError("'" + path + "': negative n-papers record");
        n = static_cast<std::size_t>(recorded);
    }
    if (n_override) n = *n_override;
    return {CitationGraph(n, edges), std::move(parsed.header)};
}

// --- group maps ------------------------------------------------------------

inline void write_group_map(const std::string& path,
                            std::span<const std::uint32_t> groups,
                            const FileComments& comments = {}) {
    auto out = detail::open_out(path);
    detail::write_comments(out, comments);
    out << "paper_id,group\n";
    for (std::size_t i = 0; i < groups.size(); ++i)
        out << i << ',' << groups[i] << '\n';
}

/// Group index per paper id; rows may appear in any order but must cover
/// 0..max_id with no gaps or duplicates.
inline std::vector<std::uint32_t> read_group_map(const std::string& path) {
    auto parsed = detail::read_csv(path, "paper_id,group");
    std::vector<std::optional<std::uint32_t>> sparse;
    for (const std::string& row : parsed.rows) {
        const auto parts = detail::split(row, ',');
        if (parts.size() != 2) throw IoError("'" + path + "': malformed row '" + row + "'");
        const auto id = detail::parse_int(parts[0], path);
        const auto grp = detail::parse_int(parts[1], path);
        if (id < 0 || grp < 0) throw IoError("'" + path + "': negative value in row '" + row + "'");
        if (sparse.size() <= static_cast<std::size_t>(id))
            sparse.resize(static_cast<std::size_t>(id) + 1);
        if (sparse[static_cast<std::size_t>(id)])
            throw IoError("'" + path + "': duplicate paper id " + std::to_string(id));
        sparse[static_cast<std::size_t>(id)] = static_cast<std::uint32_t>(grp);
    }
    std::vector<std::uint32_t> groups(sparse.size());
    for (std::size_t i = 0; i < sparse.size(); ++i) {
        if (!sparse[i]) throw IoError("'" + path + "': no group for paper " + std::to_string(i));
        groups[i] = *sparse[i];
    }
    return groups;
}

// --- metadata (JSON lines) --------------------------------------------------

/// One JSON object per line:
///   {"paper": 0, "authors": ["A","B"], "journal": "J", "date": "2020-01-31"}
/// Paper ids must be unique. Missing authors/journal mark the record
/// metadata-incomplete; aggregation rejects such papers when they contribute.
inline std::vector<PaperMeta> read_metadata(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<PaperMeta> records;
    std::set<std::int64_t> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = detail::strip_cr(line);
        if (sv.empty() || sv.front() == '#') continue;
        const auto where = path + ":" + std::to_string(lineno);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(sv);
        } catch (const nlohmann::json::exception& e) {
            throw IoError(where + ": " + e.what());
        }
        try {
            PaperMeta m;
            const std::int64_t id = j.at("paper").get<std::int64_t>();
            if (id < 0) throw IoError(where + ": negative paper id");
            if (!seen.insert(id).second)
                throw IoError(where + ": duplicate paper id " + std::to_string(id));
            m.paper = static_cast<PaperId>(id);
            if (j.contains("authors"))
                m.authors = j.at("authors").get<std::vector<std::string>>();
            if (j.contains("journal")) m.journal = j.at("journal").get<std::string>();
            m.date = parse_date(j.at("date").get<std::string>());
            records.push_back(std::move(m));
        } catch (const nlohmann::json::exception& e) {
            throw IoError(where + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw IoError(where + ": " + e.what());
        }
    }
    return records;
}

// --- rank files -------------------------------------------------------------

struct RankRow {
    std::int64_t paper = 0; //< -1 marks the dummy paper
    double score = 0.0;
    std::optional<double> unit; //< empty when the [0,1] transform is undefined
};

/// Descending score, ties broken by ascending paper id.
inline void sort_rank_rows(std::vector<RankRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const RankRow& a, const RankRow& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.paper < b.paper;
    });
}

inline void write_rank_file(const std::string& path, std::span<const RankRow> rows,
                            const FileComments& comments = {}) {
    auto out = detail::open_out(path);
    detail::write_comments(out, comments);
    out << "paper_id,score,unit_score\n";
    for (const RankRow& r : rows) {
        out << r.paper << ',' << detail::fmt_double(r.score) << ',';
        if (r.unit) out << detail::fmt_double(*r.unit);
        out << '\n';
    }
}

struct RankFile {
    std::vector<RankRow> rows;
    std::map<std::string, std::string> header;
};

inline RankFile read_rank_file(const std::string& path) {
    auto parsed = detail::read_csv(path, "paper_id,score,unit_score");
    RankFile out;
    out.header = std::move(parsed.header);
    for (const std::string& row : parsed.rows) {
        const auto parts = detail::split(row, ',');
        if (parts.size() != 3) throw IoError("'" + path + "': malformed row '" + row + "'");
        RankRow r;
        r.paper = detail::parse_int(parts[0], path);
        r.score = detail::parse_double(parts[1], path);
        if (!parts[2].empty()) r.unit = detail::parse_double(parts[2], path);
        out.rows.push_back(r);
    }
    return out;
}

// --- histograms --------------------------------------------------------------

namespace detail {

/// Equal-width bucket over [0,1]; the top bucket is right-closed so a score
/// of exactly 1 is counted.
inline std::size_t bucket_index(double u, std::size_t bins) {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::invalid_argument("unit score " + fmt_double(u) + " outside [0,1]");
    const auto k = static_cast<std::size_t>(u * static_cast<double>(bins));
    return k >= bins ? bins - 1 : k;
}

} // namespace detail

/// Equal-width bucket counts over [0,1]. Scores must already lie in [0,1].
inline std::vector<std::size_t> histogram_counts(std::span<const double> unit_scores,
                                                 std::size_t bins) {
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");
    std::vector<std::size_t> counts(bins, 0);
    for (double u : unit_scores) ++counts[detail::bucket_index(u, bins)];
    return counts;
}

/// Per-group bucket counts; result[g] is the histogram of group g.
inline std::vector<std::vector<std::size_t>>
histogram_counts(std::span<const double> unit_scores,
                 std::span<const std::uint32_t> groups, std::size_t n_groups,
                 std::size_t bins) {
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");
    if (groups.size() != unit_scores.size())
        throw std::invalid_argument("group map does not cover all scores");
    std::vector<std::vector<std::size_t>> counts(
        n_groups, std::vector<std::size_t>(bins, 0));
    for (std::size_t i = 0; i < unit_scores.size(); ++i) {
        if (groups[i] >= n_groups)
            throw std::invalid_argument("group index " + std::to_string(groups[i]) +
                                        " out of range");
        ++counts[groups[i]][detail::bucket_index(unit_scores[i], bins)];
    }
    return counts;
}

/// Writes `bin_lo,bin_hi,<column names>` rows; one count column per entry
/// of `columns`.
inline void write_histogram(const std::string& path, std::size_t bins,
                            std::span<const std::string> column_names,
                            std::span<const std::vector<std::size_t>> columns,
                            const FileComments& comments = {}) {
    auto out = detail::open_out(path);
    detail::write_comments(out, comments);
    out << "bin_lo,bin_hi";
    for (const std::string& name : column_names) out << ',' << name;
    out << '\n';
    for (std::size_t k = 0; k < bins; ++k) {
        const double lo = static_cast<double>(k) / static_cast<double>(bins);
        const double hi = static_cast<double>(k + 1) / static_cast<double>(bins);
        out << detail::fmt_double(lo) << ',' << detail::fmt_double(hi);
        for (const auto& col : columns) out << ',' << col[k];
        out << '\n';
    }
}

// --- block-model spec files ---------------------------------------------------

/// JSON spec: {"group_sizes": [300, 700], "mean_refs": [[10,0],[0,70]]}.
inline BlockModelSpec read_block_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
        BlockModelSpec spec;
        spec.group_sizes = j.at("group_sizes").get<std::vector<std::size_t>>();
        spec.mean_refs = j.at("mean_refs").get<std::vector<std::vector<double>>>();
        spec.validate();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("'" + path + "': " + e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError("'" + path + "': " + e.what());
    }
}

} // namespace paperrank
