#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "paperrank/citation_graph.hpp"

namespace paperrank {

/// Block-structured random citation model. Papers are grouped contiguously
/// (group 0 gets the lowest ids). mean_refs(g,h) is the expected number of
/// references a paper of group g makes into group h; a zero mean means no
/// citations in that direction.
struct BlockModelSpec {
    std::vector<std::size_t> group_sizes;
    std::vector<std::vector<double>> mean_refs;

    std::size_t n_groups() const { return group_sizes.size(); }

    std::size_t n_papers() const {
        std::size_t n = 0;
        for (std::size_t s : group_sizes) n += s;
        return n;
    }

    /// Throws std::invalid_argument when the spec is not realizable:
    /// mean_refs must be n_groups x n_groups, entries nonnegative and no
    /// larger than the number of distinct candidate targets (group size,
    /// minus one for the paper itself on the diagonal).
    void validate() const {
        if (group_sizes.empty())
            throw std::invalid_argument("block model needs at least one group");
        for (std::size_t s : group_sizes)
            if (s == 0)
                throw std::invalid_argument("group sizes must be positive");
        if (mean_refs.size() != n_groups())
            throw std::invalid_argument("mean_refs must have one row per group");
        for (std::size_t g = 0; g < n_groups(); ++g) {
            if (mean_refs[g].size() != n_groups())
                throw std::invalid_argument("mean_refs must be square");
            for (std::size_t h = 0; h < n_groups(); ++h) {
                const double m = mean_refs[g][h];
                const auto candidates =
                    static_cast<double>(group_sizes[h] - (g == h ? 1 : 0));
                if (!(m >= 0.0))
                    throw std::invalid_argument("mean_refs entries must be >= 0");
                if (m > candidates)
                    throw std::invalid_argument(
                        "mean_refs(" + std::to_string(g) + "," + std::to_string(h) +
                        ") = " + std::to_string(m) + " exceeds the " +
                        std::to_string(candidates) + " available targets");
            }
        }
    }
};

using Seed = std::uint64_t;

/// Group index of every paper under the contiguous id layout.
inline std::vector<std::uint32_t> group_assignments(const BlockModelSpec& spec) {
    std::vector<std::uint32_t> groups;
    groups.reserve(spec.n_papers());
    for (std::size_t g = 0; g < spec.n_groups(); ++g)
        groups.insert(groups.end(), spec.group_sizes[g],
                      static_cast<std::uint32_t>(g));
    return groups;
}

namespace detail {

/// Uniform double in [0,1) from the top 53 bits of a mt19937_64 draw.
/// Spelled out (instead of uniform_real_distribution) so the byte stream
/// is identical on every standard library.
inline double canonical_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Draws a citation graph from the block model. For paper j of group g and
/// target group h, every candidate target (group h minus j itself) is cited
/// independently with probability mean_refs(g,h) / #candidates, so the
/// out-degree into h is binomial with the requested mean and targets are
/// uniform without replacement. mt19937_64 seeded with `seed`; a fixed
/// (spec, seed) pair always yields the identical graph.
inline CitationGraph gen_block_model(const BlockModelSpec& spec, Seed seed) {
    spec.validate();
    const std::size_t n_groups = spec.n_groups();
    std::vector<std::size_t> start(n_groups + 1, 0);
    for (std::size_t g = 0; g < n_groups; ++g)
        start[g + 1] = start[g] + spec.group_sizes[g];
    const std::size_t n = start[n_groups];

    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (std::size_t g = 0; g < n_groups; ++g) {
        for (std::size_t j = start[g]; j < start[g + 1]; ++j) {
            for (std::size_t h = 0; h < n_groups; ++h) {
                const double mean = spec.mean_refs[g][h];
                if (mean == 0.0) continue;
                const std::size_t candidates =
                    spec.group_sizes[h] - (g == h ? 1 : 0);
                const double q = mean / static_cast<double>(candidates);
                for (std::size_t t = start[h]; t < start[h + 1]; ++t) {
                    if (t == j) continue;
                    if (detail::canonical_double(rng) < q)
                        edges.push_back(Edge{static_cast<PaperId>(j),
                                             static_cast<PaperId>(t)});
                }
            }
        }
    }
    return CitationGraph(n, edges);
}

/// The six synthetic experiments: group sizes and mean reference counts
/// (row = citing group, column = cited group).
inline BlockModelSpec example_spec(int n) {
    switch (n) {
        case 1: return {{500}, {{20}}};
        case 2: return {{300, 700}, {{20, 0}, {0, 20}}};
        case 3: return {{300, 700}, {{10, 0}, {0, 70}}};
        case 4: return {{300, 700}, {{70, 0}, {0, 10}}};
        case 5: return {{900, 100}, {{20, 0}, {20, 50}}};
        case 6: return {{200, 200, 400}, {{20, 0, 0}, {20, 20, 0}, {20, 0, 100}}};
        default:
            throw std::invalid_argument("example number must be in 1..6, got " +
                                        std::to_string(n));
    }
}

} // namespace paperrank
