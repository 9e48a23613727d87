#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "paperrank/io.hpp"

using namespace paperrank;
using Catch::Matchers::ContainsSubstring;

namespace {

struct TempDir {
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("paperrank_io_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }

    std::filesystem::path path;
    static inline int counter = 0;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("edge list round-trip preserves the graph") {
    TempDir dir;
    const std::vector<Edge> edges{{1, 0}, {2, 0}, {2, 1}, {4, 2}};
    const CitationGraph g(5, edges);
    const auto path = dir.file("g.csv");
    write_edge_list(path, g, {{"n-papers", "5"}, {"seed", "9"}});

    const auto loaded = read_edge_list(path);
    CHECK(loaded.graph == g);
    CHECK(loaded.header.at("seed") == "9");

    // without the n-papers record the trailing isolated paper is lost
    write_edge_list(dir.file("bare.csv"), g);
    CHECK(read_edge_list(dir.file("bare.csv")).graph.n_papers() == 5);
    CHECK(read_edge_list(dir.file("bare.csv"), 7).graph.n_papers() == 7);
}

TEST_CASE("edge list reader rejects malformed input") {
    TempDir dir;
    const auto path = dir.file("bad.csv");
    write_text(path, "citing_id,cited_id\n1,x\n");
    CHECK_THROWS_AS(read_edge_list(path), IoError);
    write_text(path, "wrong,header\n1,0\n");
    CHECK_THROWS_WITH(read_edge_list(path), ContainsSubstring("column header"));
    write_text(path, "citing_id,cited_id\n-1,0\n");
    CHECK_THROWS_WITH(read_edge_list(path), ContainsSubstring("negative"));
    CHECK_THROWS_AS(read_edge_list(dir.file("absent.csv")), IoError);
}

TEST_CASE("group map round-trip and validation") {
    TempDir dir;
    const std::vector<std::uint32_t> groups{0, 0, 1, 2, 1};
    const auto path = dir.file("groups.csv");
    write_group_map(path, groups);
    CHECK(read_group_map(path) == groups);

    write_text(dir.file("gap.csv"), "paper_id,group\n0,0\n2,1\n");
    CHECK_THROWS_WITH(read_group_map(dir.file("gap.csv")),
                      ContainsSubstring("no group for paper 1"));
    write_text(dir.file("dup.csv"), "paper_id,group\n0,0\n0,1\n");
    CHECK_THROWS_WITH(read_group_map(dir.file("dup.csv")),
                      ContainsSubstring("duplicate"));
}

TEST_CASE("metadata JSON lines parse into records") {
    TempDir dir;
    const auto path = dir.file("meta.jsonl");
    write_text(path,
               R"({"paper": 0, "authors": ["A", "B"], "journal": "J1", "date": "2019-05-04"})"
               "\n"
               "# a comment line\n"
               "\n"
               R"({"paper": 1, "journal": "J2", "date": "2021-11-30"})"
               "\n");
    const auto records = read_metadata(path);
    REQUIRE(records.size() == 2);
    CHECK(records[0].paper == 0);
    CHECK(records[0].authors == std::vector<std::string>{"A", "B"});
    CHECK(records[0].journal == "J1");
    CHECK(records[0].date == parse_date("2019-05-04"));
    CHECK(records[1].authors.empty()); // metadata-incomplete marker

    write_text(dir.file("dup.jsonl"),
               R"({"paper": 0, "date": "2020-01-01"})" "\n"
               R"({"paper": 0, "date": "2020-01-02"})" "\n");
    CHECK_THROWS_WITH(read_metadata(dir.file("dup.jsonl")),
                      ContainsSubstring("duplicate"));

    write_text(dir.file("baddate.jsonl"), R"({"paper": 0, "date": "2020-13-01"})" "\n");
    CHECK_THROWS_AS(read_metadata(dir.file("baddate.jsonl")), IoError);
}

TEST_CASE("date parsing accepts exactly ISO calendar dates") {
    CHECK(parse_date("2020-02-29") == Date(std::chrono::year{2020}, std::chrono::month{2},
                                           std::chrono::day{29}));
    CHECK_THROWS_AS(parse_date("2021-02-29"), std::invalid_argument);
    CHECK_THROWS_AS(parse_date("2021-1-01"), std::invalid_argument);
    CHECK_THROWS_AS(parse_date("21-01-01"), std::invalid_argument);
    CHECK_THROWS_AS(parse_date("2021/01/01"), std::invalid_argument);
    CHECK(format_date(parse_date("1999-12-31")) == "1999-12-31");
}

TEST_CASE("rank files sort by descending score with id tie-break") {
    TempDir dir;
    std::vector<RankRow> rows{{2, 0.5, 0.5}, {0, 1.0, 1.0}, {1, 0.5, 0.5}, {3, 0.75, 0.75}};
    sort_rank_rows(rows);
    CHECK(rows[0].paper == 0);
    CHECK(rows[1].paper == 3);
    CHECK(rows[2].paper == 1); // tie broken by ascending id
    CHECK(rows[3].paper == 2);

    const auto path = dir.file("rank.csv");
    write_rank_file(path, rows, {{"method", "citations"}});
    const auto loaded = read_rank_file(path);
    CHECK(loaded.header.at("method") == "citations");
    REQUIRE(loaded.rows.size() == 4);
    CHECK(loaded.rows[0].paper == 0);
    CHECK(loaded.rows[0].score == 1.0);
    CHECK(loaded.rows[2].unit.has_value());
}

TEST_CASE("rank rows keep empty unit scores empty") {
    TempDir dir;
    const std::vector<RankRow> rows{{0, 0.0, std::nullopt}, {1, 0.0, std::nullopt}};
    const auto path = dir.file("zero.csv");
    write_rank_file(path, rows);
    CHECK_THAT(read_text(path), ContainsSubstring("0,0,\n"));
    const auto loaded = read_rank_file(path);
    CHECK_FALSE(loaded.rows[0].unit.has_value());
}

TEST_CASE("histogram bucketing matches the right-closed top bucket rule") {
    const std::vector<double> scores{1.0, 0.5, 0.0};
    CHECK(histogram_counts(scores, 2) == std::vector<std::size_t>{1, 2});
    CHECK(histogram_counts(scores, 1) == std::vector<std::size_t>{3});
    CHECK_THROWS_AS(histogram_counts(scores, 0), std::invalid_argument);
    CHECK_THROWS_AS(histogram_counts(std::vector<double>{1.5}, 2),
                    std::invalid_argument);

    const std::vector<std::uint32_t> groups{0, 1, 0};
    const auto grouped = histogram_counts(scores, groups, 2, 2);
    CHECK(grouped[0] == std::vector<std::size_t>{1, 1});
    CHECK(grouped[1] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("histogram column sums equal the paper count for any bins value") {
    std::vector<double> scores;
    for (int i = 0; i <= 100; ++i) scores.push_back(i / 100.0);
    for (std::size_t bins : {1u, 2u, 7u, 50u, 101u}) {
        const auto counts = histogram_counts(scores, bins);
        std::size_t total = 0;
        for (auto c : counts) total += c;
        CHECK(total == scores.size());
    }
}

TEST_CASE("block spec files parse and validate") {
    TempDir dir;
    const auto path = dir.file("spec.json");
    write_text(path, R"({"group_sizes": [4, 6], "mean_refs": [[2, 0], [1, 3]]})");
    const auto spec = read_block_spec(path);
    CHECK(spec.group_sizes == std::vector<std::size_t>{4, 6});
    CHECK(spec.mean_refs[1][0] == 1.0);

    write_text(dir.file("bad.json"),
               R"({"group_sizes": [4], "mean_refs": [[9]]})");
    CHECK_THROWS_AS(read_block_spec(dir.file("bad.json")), IoError);
    write_text(dir.file("nojson.json"), "not json");
    CHECK_THROWS_AS(read_block_spec(dir.file("nojson.json")), IoError);
}

TEST_CASE("csv fields with separators are quoted") {
    CHECK(detail::csv_field("plain") == "plain");
    CHECK(detail::csv_field("a,b") == "\"a,b\"");
    CHECK(detail::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
