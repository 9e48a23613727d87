#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace paperrank {

/// Pearson correlation coefficient; empty when undefined (fewer than two
/// points or a constant input).
inline std::optional<double> pearson(std::span<const double> a,
                                     std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("correlation inputs must have equal length");
    const std::size_t n = a.size();
    if (n < 2) return std::nullopt;
    const double inv = 1.0 / static_cast<double>(n);
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma *= inv;
    mb *= inv;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) return std::nullopt;
    return cov / std::sqrt(va * vb);
}

/// Fractional ranks (1-based); tied values share the average of their ranks.
inline std::vector<double> average_ranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
    std::vector<double> ranks(x.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double shared = static_cast<double>(i + j) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

/// Spearman rank correlation: Pearson on tie-averaged ranks.
inline std::optional<double> spearman(std::span<const double> a,
                                      std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("correlation inputs must have equal length");
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    return pearson(ra, rb);
}

} // namespace paperrank
