#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "izeta/graph.hpp"
#include "izeta/linalg.hpp"

namespace izeta {

using Complex = std::complex<double>;

// Non-backtracking operator W on directed edges: W[e, f] = 1 iff f
// continues e (head(e) = tail(f)) without reversing it. Directed edges are
// ordered by sorted (tail, head) so W is byte-for-byte reproducible.
struct NonBacktrackingMatrix {
    int size = 0;  // 2m
    std::vector<std::pair<int, int>> directed_edges;      // (tail, head), sorted
    std::map<std::pair<int, int>, int> edge_index;        // (tail, head) -> row
    std::vector<std::pair<int, int>> entries;             // (row, col) of the ones

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(size, size);
        for (const auto& [r, c] : entries) w(r, c) = 1.0;
        return w;
    }
};

inline NonBacktrackingMatrix non_backtracking_matrix(const Graph& g) {
    if (g.edge_count() < 1)
        throw std::invalid_argument("non_backtracking_matrix: graph has no edges");
    NonBacktrackingMatrix w;
    for (const auto& [i, j] : g.edges()) {
        w.directed_edges.emplace_back(i, j);
        w.directed_edges.emplace_back(j, i);
    }
    std::sort(w.directed_edges.begin(), w.directed_edges.end());
    w.size = static_cast<int>(w.directed_edges.size());
    for (int e = 0; e < w.size; ++e) w.edge_index[w.directed_edges[e]] = e;
    for (int e = 0; e < w.size; ++e) {
        const auto [tail, head] = w.directed_edges[e];
        for (int next : g.neighbors(head)) {
            if (next == tail) continue;  // reversal
            w.entries.emplace_back(e, w.edge_index.at({head, next}));
        }
    }
    return w;
}

// Ihara determinant formula: (1-u^2)^{r-1} det(I + u^2 (B-I) - u A),
// taken as the definition also for disconnected graphs.
inline Complex inverse_zeta_bass(const Graph& g, Complex u) {
    const int n = g.vertex_count();
    const int r1 = g.edge_count() - n;  // r - 1
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
    const Complex u2 = u * u;
    for (int i = 0; i < n; ++i) m(i, i) += u2 * static_cast<double>(g.degree(i) - 1);
    for (const auto& [i, j] : g.edges()) {
        m(i, j) -= u;
        m(j, i) -= u;
    }
    return std::pow(Complex(1.0) - u2, r1) * complex_determinant(m);
}

// Edge route: det(I - u W) over the 2m x 2m directed-edge operator.
inline Complex inverse_zeta_edge(const Graph& g, Complex u) {
    const auto w = non_backtracking_matrix(g);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(w.size, w.size);
    for (const auto& [r, c] : w.entries) m(r, c) -= u;
    return complex_determinant(m);
}

inline double nb_spectral_radius(const NonBacktrackingMatrix& w) {
    double radius = 0.0;
    for (const auto& mu : nonsym_eigenvalues_lapack(w.dense()))
        radius = std::max(radius, std::abs(mu));
    return radius;
}

inline double nb_spectral_radius(const Graph& g) {
    return nb_spectral_radius(non_backtracking_matrix(g));
}

struct SeriesResult {
    Complex log_zeta;         // sum_{k<=K} N_k u^k / k
    double truncation_bound;  // geometric tail bound on |log Z - log_zeta|
};

// Truncated path series with N_k = Tr(W^k). Rejects u outside the
// convergence disk |u| < 1/r_W.
inline SeriesResult log_zeta_series(const Graph& g, Complex u, int K) {
    if (K < 1) throw std::invalid_argument("log_zeta_series: K must be >= 1");
    const auto w = non_backtracking_matrix(g);
    const double r_w = nb_spectral_radius(w);
    const double q = std::abs(u) * r_w;
    if (q >= 1.0)
        throw std::domain_error("log_zeta_series: |u| * spectral_radius(W) >= 1, series diverges");

    const Eigen::MatrixXd wd = w.dense();
    Eigen::MatrixXd power = wd;
    Complex sum = 0.0;
    Complex uk = u;
    for (int k = 1; k <= K; ++k) {
        sum += power.trace() * uk / static_cast<double>(k);
        uk *= u;
        if (k < K) power = power * wd;
    }
    // |N_k| <= 2m r_W^k, so the tail is below 2m q^{K+1} / ((K+1)(1-q)).
    const double tail = q > 0.0
        ? 2.0 * g.edge_count() * std::pow(q, K + 1) / ((K + 1) * (1.0 - q))
        : 0.0;
    return {sum, tail};
}

}  // namespace izeta
