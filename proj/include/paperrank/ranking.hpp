#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "paperrank/citation_graph.hpp"

namespace paperrank {

/// Probability of following a citation (vs. jumping to a random paper).
/// Strictly inside (0,1); both endpoints are rejected.
class DampingParam {
public:
    explicit DampingParam(double p) : p_(p) {
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("damping parameter must lie in (0,1), got " +
                                        std::to_string(p));
    }
    double value() const { return p_; }

private:
    double p_;
};

inline constexpr double kDefaultDamping = 0.99;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kDummyDefaultMaxIter = 50000;

enum class Normalization { raw, sum_to_one, unit_interval };

/// Nonnegative per-paper scores together with their normalization convention.
struct RankVector {
    std::vector<double> scores;
    Normalization normalization = Normalization::raw;

    std::size_t size() const { return scores.size(); }
};

struct ConvergenceReport {
    std::size_t iterations = 0;
    double final_residual = 0.0; //< 1-norm of S v - v for the returned v
    bool converged = false;
    std::vector<double> residual_history; //< step residual per iteration
};

struct RankResult {
    RankVector ranks;
    ConvergenceReport report;
};

namespace detail {

/// y += S x with S = (L + I) F^{-1}, f_j = out_degree(j) + 1.
/// Column j spreads x_j / f_j over the cited papers and over j itself.
/// Fixed accumulation order (ascending j, ascending targets) so results are
/// bit-reproducible.
inline void add_stochastic_apply(const CitationGraph& g,
                                 std::span<const double> x,
                                 std::vector<double>& y) {
    for (PaperId j = 0; j < g.n_papers(); ++j) {
        const double w = x[j] / static_cast<double>(g.out_degree(j) + 1);
        y[j] += w;
        for (PaperId i : g.cites(j)) y[i] += w;
    }
}

inline double sum(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

/// Power iteration on a column-stochastic operator, 1-norm normalized each
/// step, started from the uniform vector. `apply` must write A x into its
/// second argument. Returns the last iterate together with its verified
/// residual ||A v - v||_1 (one extra application).
template <typename Apply>
std::pair<std::vector<double>, ConvergenceReport>
power_iteration(std::size_t n, Apply&& apply, double tol, std::size_t max_iter) {
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 1)
        throw std::invalid_argument("max_iter must be at least 1");

    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> y(n);
    ConvergenceReport report;
    for (std::size_t k = 1; k <= max_iter; ++k) {
        apply(x, y);
        const double s = sum(y);
        for (double& v : y) v /= s;
        const double r = l1_distance(y, x);
        x.swap(y);
        report.iterations = k;
        report.residual_history.push_back(r);
        if (r <= tol) break;
    }
    apply(x, y);
    report.final_residual = l1_distance(y, x);
    report.converged = report.final_residual <= tol;
    return {std::move(x), std::move(report)};
}

} // namespace detail

/// Applies the column-stochastic citation operator: returns S x, where
/// S = (L + I) F^{-1} under the convention that every paper references
/// itself. Preserves the signed sum e^T x up to rounding.
inline std::vector<double> stochastic_matvec(const CitationGraph& g,
                                             std::span<const double> x) {
    if (x.size() != g.n_papers())
        throw std::invalid_argument("vector length does not match n_papers");
    std::vector<double> y(g.n_papers(), 0.0);
    detail::add_stochastic_apply(g, x, y);
    return y;
}

/// Normalized citations c_norm = S e: each citation is weighted by the
/// reciprocal bibliography length (self-loop included) of the citing paper.
/// The total mass is exactly the number of papers.
inline RankVector normalized_citations(const CitationGraph& g) {
    std::vector<double> e(g.n_papers(), 1.0);
    return RankVector{stochastic_matvec(g, e), Normalization::raw};
}

/// Default iteration budget for the damped model: ten times the number of
/// steps a geometric rate p needs to shrink the residual below tol.
inline std::size_t default_max_iter(DampingParam p, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (tol >= 1.0) return 1;
    const double steps = std::ceil(std::log(tol) / std::log(p.value()));
    return 10 * static_cast<std::size_t>(std::max(1.0, steps));
}

/// Damped PaperRank: the stationary vector of
/// S(p) = p S + (1-p)/N e e^T, computed by power iteration. The rank-one
/// jump term is applied through e^T x and never materialized. The result
/// is strictly positive and sums to one.
///
/// On non-convergence within max_iter the last iterate is returned with
/// report.converged == false; the caller decides how to proceed.
inline RankResult damped_paperrank(const CitationGraph& g, DampingParam p,
                            double tol, std::size_t max_iter) {
    if (g.n_papers() == 0)
        throw std::invalid_argument("damped_paperrank requires a non-empty graph");
    const double damp = p.value();
    const double n = static_cast<double>(g.n_papers());
    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        const double jump = (1.0 - damp) * detail::sum(x) / n;
        std::fill(y.begin(), y.end(), 0.0);
        detail::add_stochastic_apply(g, x, y);
        for (double& v : y) v = damp * v + jump;
    };
    auto [x, report] =
        detail::power_iteration(g.n_papers(), apply, tol, max_iter);
    return {RankVector{std::move(x), Normalization::sum_to_one},
            std::move(report)};
}

inline RankResult damped_paperrank(const CitationGraph& g,
                            DampingParam p = DampingParam(kDefaultDamping),
                            double tol = kDefaultTolerance) {
    return damped_paperrank(g, p, tol, default_max_iter(p, tol));
}

/// Stationary vector of the dummy-paper model: the graph is augmented with
/// paper 0 which references and is referenced by every real paper, giving
/// the primitive matrix
///   S^ = L^ diag(1/N, (I+F)^{-1}),
/// with F the raw reference-count diagonal (the +1 is the dummy reference,
/// so no implicit self-loops here). No damping is applied. Entry 0 of the
/// result is the dummy paper; real paper i sits at entry i+1.
///
/// Requires at least one edge (the primitivity theorem assumes L != 0).
inline RankResult dummy_paperrank(const CitationGraph& g,
                                  double tol = kDefaultTolerance,
                                  std::size_t max_iter = kDummyDefaultMaxIter) {
    if (g.n_edges() == 0)
        throw std::invalid_argument(
            "dummy-paper model requires a graph with at least one edge (L != 0)");
    const std::size_t n = g.n_papers();
    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        std::fill(y.begin(), y.end(), 0.0);
        const double from_dummy = x[0] / static_cast<double>(n);
        for (std::size_t i = 1; i <= n; ++i) y[i] += from_dummy;
        for (PaperId j = 0; j < n; ++j) {
            const double w = x[j + 1] / static_cast<double>(g.out_degree(j) + 1);
            y[0] += w;
            for (PaperId i : g.cites(j)) y[i + 1] += w;
        }
    };
    auto [x, report] = detail::power_iteration(n + 1, apply, tol, max_iter);
    return {RankVector{std::move(x), Normalization::sum_to_one},
            std::move(report)};
}

/// Drops the dummy entry (index 0) and renormalizes to sum one.
inline RankVector strip_dummy(const RankVector& v) {
    if (v.size() < 2)
        throw std::invalid_argument("strip_dummy needs at least two entries");
    std::vector<double> rest(v.scores.begin() + 1, v.scores.end());
    const double s = detail::sum(rest);
    if (s > 0.0)
        for (double& x : rest) x /= s;
    return RankVector{std::move(rest), Normalization::sum_to_one};
}

/// First-order damping estimate v(p) ~ p v* + (1-p)/N e for p near 1,
/// where v* is a sum-to-one reference vector. Sums to one by construction.
inline RankVector perturbation_estimate(const RankVector& v_star,
                                        DampingParam p) {
    if (v_star.size() == 0)
        throw std::invalid_argument("perturbation_estimate needs a non-empty vector");
    const double total = detail::sum(v_star.scores);
    if (std::abs(total - 1.0) > 1e-6)
        throw std::invalid_argument("perturbation_estimate expects a sum-to-one vector");
    const double damp = p.value();
    const double jump = (1.0 - damp) / static_cast<double>(v_star.size());
    std::vector<double> out(v_star.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = damp * v_star.scores[i] + jump;
    return RankVector{std::move(out), Normalization::sum_to_one};
}

/// Rescales so the maximum entry is exactly 1 (the display convention used
/// for histogram comparison). Order-preserving. Rejects all-zero input.
inline RankVector to_unit_interval(const RankVector& v) {
    if (v.size() == 0)
        throw std::invalid_argument("to_unit_interval needs a non-empty vector");
    double mx = 0.0;
    for (double x : v.scores) mx = std::max(mx, x);
    if (mx <= 0.0)
        throw std::invalid_argument(
            "to_unit_interval is undefined for an all-zero vector");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = v.scores[i] / mx;
    return RankVector{std::move(out), Normalization::unit_interval};
}

} // namespace paperrank
