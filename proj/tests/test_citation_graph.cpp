#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "paperrank/block_model.hpp"
#include "paperrank/citation_graph.hpp"
#include "support/dense_oracle.hpp"

using namespace paperrank;

namespace {

std::vector<Edge> chain_edges() { return {{1, 0}, {2, 0}, {2, 1}}; }

} // namespace

TEST_CASE("build populates both adjacency directions") {
    const auto edges = chain_edges();
    const CitationGraph g(3, edges);
    REQUIRE(g.n_papers() == 3);
    REQUIRE(g.n_edges() == 3);
    CHECK(g.cites(0).empty());
    CHECK(std::vector<PaperId>(g.cites(1).begin(), g.cites(1).end()) ==
          std::vector<PaperId>{0});
    CHECK(std::vector<PaperId>(g.cites(2).begin(), g.cites(2).end()) ==
          std::vector<PaperId>{0, 1});
    CHECK(std::vector<PaperId>(g.cited_by(0).begin(), g.cited_by(0).end()) ==
          std::vector<PaperId>{1, 2});
    CHECK(std::vector<PaperId>(g.cited_by(1).begin(), g.cited_by(1).end()) ==
          std::vector<PaperId>{2});
    CHECK(g.cited_by(2).empty());
}

TEST_CASE("duplicate edges collapse to one") {
    const std::vector<Edge> edges{{1, 0}, {1, 0}};
    const CitationGraph g(3, edges);
    CHECK(g.n_edges() == 1);
    CHECK(g.out_degree(1) == 1);
    CHECK(g.in_degree(0) == 1);
}

TEST_CASE("input self-loops are dropped and counted") {
    const std::vector<Edge> edges{{0, 0}};
    const CitationGraph g(2, edges);
    CHECK(g.n_edges() == 0);
    CHECK(g.dropped_self_loops() == 1);
}

TEST_CASE("out-of-range ids are rejected naming the edge") {
    const std::vector<Edge> edges{{1, 3}};
    REQUIRE_THROWS_WITH((CitationGraph(3, edges)),
                        Catch::Matchers::ContainsSubstring("(1,3)"));
}

TEST_CASE("bare citations count raw in-degrees") {
    const auto edges = chain_edges();
    const CitationGraph g(3, edges);
    CHECK(bare_citations(g) == std::vector<std::uint32_t>{2, 1, 0});
    const CitationGraph empty(3, {});
    CHECK(bare_citations(empty) == std::vector<std::uint32_t>{0, 0, 0});
}

TEST_CASE("reference counts with and without the self-loop") {
    const auto edges = chain_edges();
    const CitationGraph g(3, edges);
    CHECK(reference_counts(g, false) == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(reference_counts(g, true) == std::vector<std::uint32_t>{1, 2, 3});
    const CitationGraph empty(4, {});
    CHECK(reference_counts(empty, true) ==
          std::vector<std::uint32_t>{1, 1, 1, 1});
}

TEST_CASE("transpose consistency and edge-count conservation") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = 2 + rng() % 40;
        const auto g = oracle::random_graph(rng, n, 0.15);
        std::size_t out_total = 0, in_total = 0;
        for (PaperId j = 0; j < n; ++j) {
            out_total += g.out_degree(j);
            in_total += g.in_degree(j);
            for (PaperId i : g.cites(j)) {
                const auto in = g.cited_by(i);
                CHECK(std::binary_search(in.begin(), in.end(), j));
            }
        }
        CHECK(out_total == g.n_edges());
        CHECK(in_total == g.n_edges());

        const auto c = bare_citations(g);
        const auto f = reference_counts(g, false);
        CHECK(std::accumulate(c.begin(), c.end(), std::size_t{0}) == g.n_edges());
        CHECK(std::accumulate(f.begin(), f.end(), std::size_t{0}) == g.n_edges());
        for (auto fj : reference_counts(g, true)) CHECK(fj >= 1);
    }
}

TEST_CASE("bare-citation sample mean tracks the generator's reference mean") {
    // single homogeneous group, mean 20 references per paper
    const auto g = paperrank::gen_block_model(paperrank::example_spec(1), 2);
    const auto c = bare_citations(g);
    double mean = 0.0;
    for (auto ci : c) mean += static_cast<double>(ci);
    mean /= static_cast<double>(c.size());
    CHECK(mean > 18.0);
    CHECK(mean < 22.0);
}

TEST_CASE("construction is invariant under edge-list permutation") {
    std::mt19937_64 rng(11);
    std::vector<Edge> edges;
    for (int k = 0; k < 60; ++k)
        edges.push_back({static_cast<PaperId>(rng() % 12),
                         static_cast<PaperId>(rng() % 12)});
    const CitationGraph reference(12, edges);
    for (int round = 0; round < 10; ++round) {
        std::shuffle(edges.begin(), edges.end(), rng);
        CHECK(CitationGraph(12, edges) == reference);
    }
}
