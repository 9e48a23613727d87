// Test-only dense reference computations. These deliberately take a
// different route than the library (explicit dense matrices and direct
// linear solves instead of sparse power iteration) so they can serve as an
// independent oracle.
#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "paperrank/citation_graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

/// Dense S = (L + I) F^{-1}: column j spreads 1/(out_degree(j)+1) over the
/// cited papers and j itself.
inline Matrix dense_stochastic(const paperrank::CitationGraph& g) {
    const std::size_t n = g.n_papers();
    Matrix S(n, std::vector<double>(n, 0.0));
    for (paperrank::PaperId j = 0; j < n; ++j) {
        const double w = 1.0 / static_cast<double>(g.out_degree(j) + 1);
        S[j][j] += w;
        for (paperrank::PaperId i : g.cites(j)) S[i][j] += w;
    }
    return S;
}

/// Dense damped matrix S(p) = p S + (1-p)/N e e^T.
inline Matrix dense_damped(const Matrix& S, double p) {
    const std::size_t n = S.size();
    Matrix out(n, std::vector<double>(n, 0.0));
    const double jump = (1.0 - p) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = p * S[i][j] + jump;
    return out;
}

/// Dense dummy-paper matrix S^ = L^ diag(1/N, (I+F)^{-1}); index 0 is the
/// dummy paper, F holds the raw reference counts.
inline Matrix dense_dummy(const paperrank::CitationGraph& g) {
    const std::size_t n = g.n_papers();
    Matrix S(n + 1, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) S[i + 1][0] = 1.0 / static_cast<double>(n);
    for (paperrank::PaperId j = 0; j < n; ++j) {
        const double w = 1.0 / static_cast<double>(g.out_degree(j) + 1);
        S[0][j + 1] = w;
        for (paperrank::PaperId i : g.cites(j)) S[i + 1][j + 1] = w;
    }
    return S;
}

inline Matrix matmul(const Matrix& A, const Matrix& B) {
    const std::size_t n = A.size();
    Matrix C(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
}

/// Gaussian elimination with partial pivoting.
inline std::vector<double> solve(Matrix A, std::vector<double> b) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        if (std::abs(A[pivot][col]) < 1e-14)
            throw std::runtime_error("oracle solve: singular matrix");
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = A[r][col] / A[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

/// Stationary vector of the damped model via the direct solve
/// (I - p S) v = (1-p)/N e, which sums to one automatically because
/// e^T S = e^T.
inline std::vector<double> damped_stationary(const paperrank::CitationGraph& g,
                                             double p) {
    const std::size_t n = g.n_papers();
    Matrix A = dense_stochastic(g);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            A[i][j] = (i == j ? 1.0 : 0.0) - p * A[i][j];
    return solve(std::move(A),
                 std::vector<double>(n, (1.0 - p) / static_cast<double>(n)));
}

/// Stationary vector of any column-stochastic matrix with a simple unit
/// eigenvalue, via the bordered solve (I - M + e e^T) v = e (nonsingular
/// whenever the eigenvalue 1 is simple).
inline std::vector<double> stationary(const Matrix& M) {
    const std::size_t n = M.size();
    Matrix A(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            A[i][j] = (i == j ? 1.0 : 0.0) - M[i][j] + 1.0;
    return solve(std::move(A), std::vector<double>(n, 1.0));
}

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

/// Erdos-Renyi style random test graph; edge probability chosen so degrees
/// stay small. Deterministic in the seed.
inline paperrank::CitationGraph random_graph(std::mt19937_64& rng, std::size_t n,
                                             double edge_prob,
                                             bool require_edge = false) {
    std::vector<paperrank::Edge> edges;
    while (true) {
        edges.clear();
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                if (i == j) continue;
                const double u =
                    static_cast<double>(rng() >> 11) * 0x1.0p-53;
                if (u < edge_prob)
                    edges.push_back({static_cast<paperrank::PaperId>(j),
                                     static_cast<paperrank::PaperId>(i)});
            }
        if (!require_edge || !edges.empty()) break;
    }
    return paperrank::CitationGraph(n, edges);
}

} // namespace oracle
