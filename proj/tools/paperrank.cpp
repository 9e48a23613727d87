// Command-line front end: synthetic graph generation, the four ranking
// methods, histogram/comparison exports and author/journal aggregation.
//
// Exit codes: 0 success, 2 input or usage error, 3 non-convergence.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "paperrank/aggregate.hpp"
#include "paperrank/block_model.hpp"
#include "paperrank/citation_graph.hpp"
#include "paperrank/correlation.hpp"
#include "paperrank/io.hpp"
#include "paperrank/meta.hpp"
#include "paperrank/ranking.hpp"
#include "paperrank/version.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 2;
constexpr int kNoConvergence = 3;

namespace pr = paperrank;

std::string tool_id() {
    return std::string(pr::kToolName) + " " + pr::kVersion;
}

/// PAPERRANK_THREADS caps the internal worker count (0 = serial). All
/// pipelines currently run serially, which satisfies any cap; the value is
/// still validated so misconfiguration fails loudly.
void check_thread_cap() {
    const char* env = std::getenv("PAPERRANK_THREADS");
    if (!env) return;
    const std::string s(env);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw pr::IoError("PAPERRANK_THREADS must be a nonnegative integer, got '" +
                          s + "'");
}

std::string basename_of(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

/// Companion file path: "dir/graph.csv" + "groups" -> "dir/graph.groups.csv".
std::string companion_path(const std::string& out, const std::string& infix) {
    std::filesystem::path p(out);
    const std::string ext = p.extension().string();
    p.replace_extension();
    p += "." + infix + ext;
    return p.string();
}

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

// --- synth ------------------------------------------------------------------

struct SynthArgs {
    int example = 0;
    std::string spec_file;
    pr::Seed seed = 0;
    std::string out;
};

int run_synth(const SynthArgs& a) {
    pr::BlockModelSpec spec;
    pr::FileComments comments{{"tool", tool_id()}, {"command", "synth"}};
    if (a.example != 0) {
        spec = pr::example_spec(a.example);
        comments.emplace_back("example", std::to_string(a.example));
    } else {
        spec = pr::read_block_spec(a.spec_file);
        comments.emplace_back("spec", basename_of(a.spec_file));
    }
    const pr::CitationGraph g = pr::gen_block_model(spec, a.seed);
    comments.emplace_back("seed", std::to_string(a.seed));
    comments.emplace_back("n-papers", std::to_string(g.n_papers()));
    comments.emplace_back("groups", std::to_string(spec.n_groups()));
    comments.emplace_back("edges", std::to_string(g.n_edges()));

    pr::write_edge_list(a.out, g, comments);
    const std::string group_path = companion_path(a.out, "groups");
    pr::write_group_map(group_path, pr::group_assignments(spec), comments);
    std::cout << "wrote " << a.out << " and " << group_path << " (N=" << g.n_papers()
              << ", edges=" << g.n_edges() << ")\n";
    return kOk;
}

// --- rank -------------------------------------------------------------------

struct RankArgs {
    std::string graph_path;
    std::string method = "paperrank";
    double damping = pr::kDefaultDamping;
    double tol = pr::kDefaultTolerance;
    std::size_t max_iter = 0; // 0 = derived from damping and tol
    std::optional<std::size_t> n_papers;
    std::string out;
};

std::vector<pr::RankRow> make_rows(std::span<const double> scores,
                                   std::int64_t first_id,
                                   pr::FileComments& comments) {
    double mx = 0.0;
    for (double s : scores) mx = std::max(mx, s);
    std::vector<pr::RankRow> rows(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        rows[i].paper = first_id + static_cast<std::int64_t>(i);
        rows[i].score = scores[i];
        if (mx > 0.0) rows[i].unit = scores[i] / mx;
    }
    if (mx <= 0.0)
        comments.emplace_back("warning",
                              "all scores are zero; unit_score left empty");
    pr::sort_rank_rows(rows);
    return rows;
}

void add_convergence_comments(pr::FileComments& comments,
                              const pr::ConvergenceReport& report) {
    comments.emplace_back("iterations", std::to_string(report.iterations));
    comments.emplace_back("residual", pr::detail::fmt_double(report.final_residual));
    comments.emplace_back("converged", report.converged ? "true" : "false");
}

int run_rank(const RankArgs& a) {
    const auto file = pr::read_edge_list(a.graph_path, a.n_papers);
    const pr::CitationGraph& g = file.graph;
    if (g.n_papers() == 0) throw pr::IoError("graph has no papers");

    pr::FileComments comments{{"tool", tool_id()},
                              {"command", "rank"},
                              {"method", a.method},
                              {"input", basename_of(a.graph_path)}};
    if (auto it = file.header.find("seed"); it != file.header.end())
        comments.emplace_back("seed", it->second);

    int rc = kOk;
    std::vector<pr::RankRow> rows;
    if (a.method == "citations") {
        const auto c = pr::bare_citations(g);
        rows = make_rows(std::vector<double>(c.begin(), c.end()), 0, comments);
    } else if (a.method == "normalized") {
        rows = make_rows(pr::normalized_citations(g).scores, 0, comments);
    } else if (a.method == "paperrank") {
        const pr::DampingParam p(a.damping);
        const std::size_t budget =
            a.max_iter ? a.max_iter : pr::default_max_iter(p, a.tol);
        comments.emplace_back("p", pr::detail::fmt_double(a.damping));
        comments.emplace_back("tol", pr::detail::fmt_double(a.tol));
        comments.emplace_back("max-iter", std::to_string(budget));
        const auto result = pr::damped_paperrank(g, p, a.tol, budget);
        add_convergence_comments(comments, result.report);
        rows = make_rows(result.ranks.scores, 0, comments);
        if (!result.report.converged) rc = kNoConvergence;
    } else if (a.method == "dummy") {
        const std::size_t budget = a.max_iter ? a.max_iter : pr::kDummyDefaultMaxIter;
        comments.emplace_back("tol", pr::detail::fmt_double(a.tol));
        comments.emplace_back("max-iter", std::to_string(budget));
        const auto result = pr::dummy_paperrank(g, a.tol, budget);
        add_convergence_comments(comments, result.report);
        rows = make_rows(result.ranks.scores, -1, comments); // dummy paper is id -1
        if (!result.report.converged) rc = kNoConvergence;

        auto stripped_comments = comments;
        stripped_comments.emplace_back("note", "dummy entry removed, renormalized");
        const auto stripped = pr::strip_dummy(result.ranks);
        auto stripped_rows = make_rows(stripped.scores, 0, stripped_comments);
        pr::write_rank_file(companion_path(a.out, "stripped"), stripped_rows,
                            stripped_comments);
    } else {
        throw pr::IoError("unknown method '" + a.method +
                          "' (expected citations|normalized|paperrank|dummy)");
    }

    pr::write_rank_file(a.out, rows, comments);
    std::cout << "wrote " << a.out << " (" << rows.size() << " rows)\n";
    return rc;
}

// --- hist -------------------------------------------------------------------

struct HistArgs {
    std::string rank_path;
    std::size_t bins = 50;
    std::string group_map;
    std::string out;
};

int run_hist(const HistArgs& a) {
    if (a.bins < 1) throw pr::IoError("--bins must be >= 1");
    const auto file = pr::read_rank_file(a.rank_path);
    std::vector<double> units;
    units.reserve(file.rows.size());
    for (const pr::RankRow& r : file.rows) {
        if (!r.unit)
            throw pr::IoError("'" + a.rank_path + "' has no unit_score for paper " +
                              std::to_string(r.paper));
        units.push_back(*r.unit);
    }

    pr::FileComments comments{{"tool", tool_id()},
                              {"command", "hist"},
                              {"input", basename_of(a.rank_path)},
                              {"bins", std::to_string(a.bins)}};
    for (const char* key : {"method", "seed"})
        if (auto it = file.header.find(key); it != file.header.end())
            comments.emplace_back(key, it->second);

    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> columns;
    if (a.group_map.empty()) {
        names = {"count"};
        columns = {pr::histogram_counts(units, a.bins)};
    } else {
        const auto groups = pr::read_group_map(a.group_map);
        std::vector<std::uint32_t> row_groups;
        row_groups.reserve(file.rows.size());
        std::uint32_t n_groups = 0;
        for (const pr::RankRow& r : file.rows) {
            if (r.paper < 0 || static_cast<std::size_t>(r.paper) >= groups.size())
                throw pr::IoError("group map does not cover paper " +
                                  std::to_string(r.paper));
            row_groups.push_back(groups[static_cast<std::size_t>(r.paper)]);
            n_groups = std::max(n_groups, row_groups.back() + 1);
        }
        columns = pr::histogram_counts(units, row_groups, n_groups, a.bins);
        for (std::uint32_t gi = 0; gi < n_groups; ++gi)
            names.push_back("count_g" + std::to_string(gi));
    }
    pr::write_histogram(a.out, a.bins, names, columns, comments);
    std::cout << "wrote " << a.out << "\n";
    return kOk;
}

// --- compare ----------------------------------------------------------------

struct CompareArgs {
    std::string graph_path;
    double damping = pr::kDefaultDamping;
    double tol = pr::kDefaultTolerance;
    std::size_t max_iter = 0;
    std::optional<std::size_t> n_papers;
    std::string group_map;
    std::string out;
};

void append_correlations(std::ostream& os, const std::string& name,
                         std::span<const double> heuristic,
                         std::span<const double> reference) {
    const auto s = pr::spearman(heuristic, reference);
    const auto r = pr::pearson(heuristic, reference);
    os << "# spearman_" << name
       << "_vs_paperrank: " << (s ? pr::detail::fmt_double(*s) : "undefined") << "\n";
    os << "# pearson_" << name
       << "_vs_paperrank: " << (r ? pr::detail::fmt_double(*r) : "undefined") << "\n";
}

void append_group_means(std::ostream& os, const std::string& name,
                        std::span<const double> scores,
                        std::span<const std::uint32_t> groups,
                        std::uint32_t n_groups) {
    std::vector<double> sum(n_groups, 0.0);
    std::vector<std::size_t> cnt(n_groups, 0);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        sum[groups[i]] += scores[i];
        ++cnt[groups[i]];
    }
    for (std::uint32_t gi = 0; gi < n_groups; ++gi)
        os << "# group_mean_" << name << "_g" << gi << ": "
           << (cnt[gi] ? pr::detail::fmt_double(sum[gi] / static_cast<double>(cnt[gi]))
                       : "undefined")
           << "\n";
}

int run_compare(const CompareArgs& a) {
    const auto file = pr::read_edge_list(a.graph_path, a.n_papers);
    const pr::CitationGraph& g = file.graph;
    const std::size_t n = g.n_papers();
    if (n == 0) throw pr::IoError("graph has no papers");

    const auto c_int = pr::bare_citations(g);
    const std::vector<double> c(c_int.begin(), c_int.end());
    const std::vector<double> cn = pr::normalized_citations(g).scores;

    const pr::DampingParam p(a.damping);
    const std::size_t budget = a.max_iter ? a.max_iter : pr::default_max_iter(p, a.tol);
    const auto ranked = pr::damped_paperrank(g, p, a.tol, budget);
    const std::vector<double>& v = ranked.ranks.scores;

    int rc = ranked.report.converged ? kOk : kNoConvergence;
    std::optional<std::vector<double>> dummy;
    if (g.n_edges() > 0) {
        const std::size_t dummy_budget = a.max_iter ? a.max_iter : pr::kDummyDefaultMaxIter;
        const auto d = pr::dummy_paperrank(g, a.tol, dummy_budget);
        if (!d.report.converged) rc = kNoConvergence;
        dummy = pr::strip_dummy(d.ranks).scores;
    }

    std::optional<std::vector<std::uint32_t>> groups;
    std::uint32_t n_groups = 0;
    if (!a.group_map.empty()) {
        groups = pr::read_group_map(a.group_map);
        if (groups->size() < n)
            throw pr::IoError("group map does not cover all papers");
        for (std::uint32_t gi : *groups) n_groups = std::max(n_groups, gi + 1);
    }

    auto out = pr::detail::open_out(a.out);
    pr::FileComments comments{{"tool", tool_id()},
                              {"command", "compare"},
                              {"input", basename_of(a.graph_path)},
                              {"p", pr::detail::fmt_double(a.damping)},
                              {"tol", pr::detail::fmt_double(a.tol)}};
    if (auto it = file.header.find("seed"); it != file.header.end())
        comments.emplace_back("seed", it->second);
    if (!dummy)
        comments.emplace_back("warning", "dummy model undefined (graph has no edges)");
    pr::detail::write_comments(out, comments);
    out << "paper_id,citations,normalized,paperrank,dummy\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << i << ',' << pr::detail::fmt_double(c[i]) << ','
            << pr::detail::fmt_double(cn[i]) << ',' << pr::detail::fmt_double(v[i])
            << ',';
        if (dummy) out << pr::detail::fmt_double((*dummy)[i]);
        out << '\n';
    }
    append_correlations(out, "citations", c, v);
    append_correlations(out, "normalized", cn, v);
    if (dummy) append_correlations(out, "dummy", *dummy, v);
    if (groups) {
        append_group_means(out, "citations", c, *groups, n_groups);
        append_group_means(out, "normalized", cn, *groups, n_groups);
        append_group_means(out, "paperrank", v, *groups, n_groups);
        if (dummy) append_group_means(out, "dummy", *dummy, *groups, n_groups);
    }
    std::cout << "wrote " << a.out << "\n";
    return rc;
}

// --- aggregate ----------------------------------------------------------------

struct AggregateArgs {
    std::string rank_path;
    std::string meta_path;
    std::string target;
    std::string window_t;
    int window_nu = 0;
    std::string out;
};

int run_aggregate(const AggregateArgs& a) {
    const auto file = pr::read_rank_file(a.rank_path);
    const auto records = pr::read_metadata(a.meta_path);
    std::map<std::int64_t, const pr::PaperMeta*> by_id;
    for (const auto& m : records) by_id[static_cast<std::int64_t>(m.paper)] = &m;

    std::optional<pr::TimeWindow> window;
    if (!a.window_t.empty())
        window.emplace(pr::parse_date(a.window_t), a.window_nu);

    // Compact to row order, keeping original ids for error messages.
    pr::RankVector v{std::vector<double>(), pr::Normalization::raw};
    std::vector<pr::PaperMeta> aligned;
    for (const pr::RankRow& r : file.rows) {
        const auto it = by_id.find(r.paper);
        if (it == by_id.end())
            throw pr::IoError("no metadata for ranked paper " + std::to_string(r.paper));
        const pr::PaperMeta& m = *it->second;
        const bool contributes = !window || window->contains(m.date);
        if (contributes && a.target == "authors" && m.authors.empty())
            throw pr::IoError("paper " + std::to_string(r.paper) + " has no authors");
        if (contributes && a.target == "journals" && m.journal.empty())
            throw pr::IoError("paper " + std::to_string(r.paper) +
                              " has no journal assignment");
        pr::PaperMeta copy = m;
        copy.paper = static_cast<pr::PaperId>(aligned.size());
        aligned.push_back(std::move(copy));
        v.scores.push_back(r.score);
    }

    double windowed_total = 0.0;
    for (std::size_t i = 0; i < aligned.size(); ++i)
        if (!window || window->contains(aligned[i].date)) windowed_total += v.scores[i];

    auto out = pr::detail::open_out(a.out);
    pr::FileComments comments{{"tool", tool_id()},
                              {"command", "aggregate"},
                              {"target", a.target},
                              {"input", basename_of(a.rank_path)},
                              {"metadata", basename_of(a.meta_path)}};
    if (window) {
        comments.emplace_back("window-t", a.window_t);
        comments.emplace_back("window-nu", std::to_string(a.window_nu));
    }
    pr::detail::write_comments(out, comments);

    double rank_total = 0.0;
    if (a.target == "authors") {
        const auto table = pr::author_ranks(v, aligned, window);
        std::vector<std::pair<std::string, double>> rows(table.ranks.begin(),
                                                         table.ranks.end());
        std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
            if (x.second != y.second) return x.second > y.second;
            return x.first < y.first;
        });
        out << "author,rank\n";
        for (const auto& [author, rank] : rows) {
            out << pr::detail::csv_field(author) << ','
                << pr::detail::fmt_double(rank) << '\n';
            rank_total += rank;
        }
    } else {
        const auto table = pr::journal_ranks(v, aligned, window);
        std::vector<std::pair<std::string, pr::JournalEntry>> rows(
            table.journals.begin(), table.journals.end());
        std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
            if (x.second.rank != y.second.rank) return x.second.rank > y.second.rank;
            return x.first < y.first;
        });
        out << "journal,n_papers,rank,average\n";
        for (const auto& [journal, entry] : rows) {
            out << pr::detail::csv_field(journal) << ',' << entry.paper_count << ','
                << pr::detail::fmt_double(entry.rank) << ',';
            if (entry.average) out << pr::detail::fmt_double(*entry.average);
            out << '\n';
            rank_total += entry.rank;
        }
    }
    out << "# conservation: " << fmt6(rank_total) << " = " << fmt6(windowed_total)
        << "\n";
    std::cout << "wrote " << a.out << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Citation-graph ranking toolkit"};
    app.set_version_flag("--version", tool_id());
    app.require_subcommand(1);

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand(
        "synth", "Generate a synthetic block-model citation graph");
    auto* ex_opt = synth_cmd->add_option("--example", synth.example,
                                         "Built-in experiment number (1..6)");
    auto* spec_opt =
        synth_cmd->add_option("--spec", synth.spec_file, "Block-model JSON spec file");
    ex_opt->excludes(spec_opt);
    synth_cmd->add_option("--seed", synth.seed, "RNG seed")->default_val(0);
    synth_cmd->add_option("-o,--out", synth.out, "Edge-list output path")->required();

    RankArgs rank;
    auto* rank_cmd = app.add_subcommand("rank", "Rank the papers of a citation graph");
    rank_cmd->add_option("graph", rank.graph_path, "Edge-list input file")->required();
    rank_cmd
        ->add_option("--method", rank.method,
                     "citations|normalized|paperrank|dummy (default paperrank)")
        ->default_val("paperrank");
    rank_cmd->add_option("-p,--damping", rank.damping, "Damping parameter in (0,1)")
        ->default_val(pr::kDefaultDamping);
    rank_cmd->add_option("--tol", rank.tol, "Convergence tolerance (1-norm)")
        ->default_val(pr::kDefaultTolerance);
    rank_cmd->add_option("--max-iter", rank.max_iter, "Iteration budget (0 = auto)");
    rank_cmd->add_option("--n-papers", rank.n_papers,
                         "Override the paper count of the input file");
    rank_cmd->add_option("-o,--out", rank.out, "Ranked CSV output path")->required();

    HistArgs hist;
    auto* hist_cmd =
        app.add_subcommand("hist", "Bin the unit scores of a ranked CSV");
    hist_cmd->add_option("rank", hist.rank_path, "Ranked CSV input file")->required();
    hist_cmd->add_option("--bins", hist.bins, "Number of equal-width buckets")
        ->default_val(50);
    hist_cmd->add_option("--group-map", hist.group_map,
                         "paper_id,group CSV for per-group columns");
    hist_cmd->add_option("-o,--out", hist.out, "Histogram CSV output path")->required();

    CompareArgs compare;
    auto* compare_cmd = app.add_subcommand(
        "compare", "Run all ranking methods and correlate them");
    compare_cmd->add_option("graph", compare.graph_path, "Edge-list input file")
        ->required();
    compare_cmd->add_option("-p,--damping", compare.damping, "Damping parameter")
        ->default_val(pr::kDefaultDamping);
    compare_cmd->add_option("--tol", compare.tol, "Convergence tolerance")
        ->default_val(pr::kDefaultTolerance);
    compare_cmd->add_option("--max-iter", compare.max_iter, "Iteration budget (0 = auto)");
    compare_cmd->add_option("--n-papers", compare.n_papers,
                            "Override the paper count of the input file");
    compare_cmd->add_option("--group-map", compare.group_map,
                            "paper_id,group CSV enabling per-group means");
    compare_cmd->add_option("-o,--out", compare.out, "Comparison CSV output path")
        ->required();

    AggregateArgs aggregate;
    auto* agg_cmd = app.add_subcommand(
        "aggregate", "Fold paper ranks into author or journal tables");
    agg_cmd->add_option("rank", aggregate.rank_path, "Ranked CSV input file")
        ->required();
    agg_cmd->add_option("metadata", aggregate.meta_path, "JSON-lines metadata file")
        ->required();
    agg_cmd->add_option("--target", aggregate.target, "authors|journals")
        ->required()
        ->check(CLI::IsMember({"authors", "journals"}));
    auto* wt = agg_cmd->add_option("--window-t", aggregate.window_t,
                                   "Window reference date YYYY-MM-DD");
    auto* wn = agg_cmd->add_option("--window-nu", aggregate.window_nu,
                                   "Window length in years");
    wt->needs(wn);
    wn->needs(wt);
    agg_cmd->add_option("-o,--out", aggregate.out, "Table CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        check_thread_cap();
        if (synth_cmd->parsed()) {
            if (synth.example == 0 && synth.spec_file.empty())
                throw pr::IoError("synth needs --example or --spec");
            return run_synth(synth);
        }
        if (rank_cmd->parsed()) return run_rank(rank);
        if (hist_cmd->parsed()) return run_hist(hist);
        if (compare_cmd->parsed()) return run_compare(compare);
        if (agg_cmd->parsed()) return run_aggregate(aggregate);
    } catch (const std::exception& e) {
        std::cerr << "paperrank: " << e.what() << "\n";
        return kUsageError;
    }
    return kOk;
}
