#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "izeta/graph.hpp"
#include "izeta/linalg.hpp"
#include "izeta/tolerances.hpp"

namespace izeta {

// Real spectrum of a symmetric matrix, descending. Rejects inputs that are
// not symmetric to kSymmetryRel relative.
inline std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("sym_eigenvalues: matrix must be square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol::kSymmetryRel * scale)
        throw std::invalid_argument("sym_eigenvalues: matrix is not symmetric");
    return sym_eigenvalues_lapack(m);
}

inline std::vector<std::complex<double>> nonsym_eigenvalues(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("nonsym_eigenvalues: matrix must be square");
    return nonsym_eigenvalues_lapack(m);
}

// Singular values, ascending.
inline std::vector<double> singular_values(const Eigen::MatrixXcd& m) {
    return singular_values_lapack(m);
}

// Normalized matrices of the Erdos-Renyi analysis:
//   A~ = A / sqrt(rho)
//   A' (a_breve) = centered off-diagonal (a_ij - rho/n) / sqrt(rho)
//   B~ = B / rho,  B^ = B~ - ((n-1)/n) I
//   delta_max = max_i |B^_ii|,  tau = 1/n + 1/rho
struct NormalizedMatrices {
    int n = 0;
    double rho = 0.0;
    double tau = 0.0;
    double delta_max = 0.0;
    Eigen::MatrixXd a_tilde;
    Eigen::MatrixXd a_breve;
    Eigen::VectorXd b_tilde_diag;
    Eigen::VectorXd b_hat_diag;
    bool degenerate_rho = false;  // rho at or beyond (0, n) interior
};

inline NormalizedMatrices normalized_matrices(const Graph& g, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("normalized_matrices: rho must be positive");
    NormalizedMatrices nm;
    nm.n = g.vertex_count();
    nm.rho = rho;
    nm.tau = 1.0 / nm.n + 1.0 / rho;
    nm.degenerate_rho = rho >= nm.n;
    const double s = 1.0 / std::sqrt(rho);
    nm.a_tilde = g.adjacency_matrix() * s;
    nm.a_breve = Eigen::MatrixXd::Constant(nm.n, nm.n, -rho / nm.n * s);
    nm.a_breve.diagonal().setZero();
    for (const auto& [i, j] : g.edges()) {
        nm.a_breve(i, j) += s;
        nm.a_breve(j, i) += s;
    }
    nm.b_tilde_diag.resize(nm.n);
    nm.b_hat_diag.resize(nm.n);
    const double shift = static_cast<double>(nm.n - 1) / nm.n;
    for (int i = 0; i < nm.n; ++i) {
        nm.b_tilde_diag[i] = g.degree(i) / rho;
        nm.b_hat_diag[i] = nm.b_tilde_diag[i] - shift;
    }
    nm.delta_max = nm.b_hat_diag.cwiseAbs().maxCoeff();
    return nm;
}

// Corrected Zhukovsky transform gamma(v) = v (1 - tau) + 1/v.
inline std::complex<double> gamma_transform(std::complex<double> v, double tau) {
    return v * (1.0 - tau) + 1.0 / v;
}

// H(v) = A~ - gamma(v) I - v B^.  Satisfies
//   -v H(v) = I + (v^2/rho)(B - I) - (v/sqrt(rho)) A.
inline Eigen::MatrixXcd build_H(const NormalizedMatrices& nm, std::complex<double> v) {
    if (v == std::complex<double>(0.0))
        throw std::invalid_argument("build_H: v must be nonzero");
    Eigen::MatrixXcd h = nm.a_tilde.cast<std::complex<double>>();
    const std::complex<double> gamma = gamma_transform(v, nm.tau);
    for (int i = 0; i < nm.n; ++i) h(i, i) -= gamma + v * nm.b_hat_diag[i];
    return h;
}

struct WeylGap {
    double max_gap = 0.0;  // max_i |sigma_i(X+Y) - sigma_i(X)|
    double bound = 0.0;    // ||Y|| (largest singular value)
};

inline WeylGap weyl_singular_gap(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("weyl_singular_gap: dimension mismatch");
    const auto sx = singular_values(x);
    const auto sxy = singular_values(x + y);
    WeylGap g;
    for (std::size_t i = 0; i < sx.size(); ++i)
        g.max_gap = std::max(g.max_gap, std::abs(sxy[i] - sx[i]));
    g.bound = operator_norm(y);
    return g;
}

// Hermitian Weyl bound for real v, where H(v) is real symmetric:
// eigenvalues of H(v) against those of A~ - gamma(v) I, both descending.
inline WeylGap weyl_eigen_gap_real_v(const NormalizedMatrices& nm, double v) {
    if (v == 0.0) throw std::invalid_argument("weyl_eigen_gap_real_v: v must be nonzero");
    const double gamma = v * (1.0 - nm.tau) + 1.0 / v;
    Eigen::MatrixXd h = nm.a_tilde;
    for (int i = 0; i < nm.n; ++i) h(i, i) -= gamma + v * nm.b_hat_diag[i];
    const auto lh = sym_eigenvalues(h);
    const auto la = sym_eigenvalues(nm.a_tilde);
    WeylGap g;
    for (std::size_t i = 0; i < lh.size(); ++i)
        g.max_gap = std::max(g.max_gap, std::abs(lh[i] - (la[i] - gamma)));
    g.bound = std::abs(v) * nm.delta_max;
    return g;
}

struct InterlacingResult {
    bool top = false;     // lambda_1(A') >= lambda_2(A~)
    bool bottom = false;  // lambda_min(A~) >= lambda_min(A') - t
    double t = 0.0;       // centering weight sqrt(rho)/n
    double lambda1_breve = 0.0;
    double lambda2_tilde = 0.0;
    double lambda_min_tilde = 0.0;
    double lambda_min_breve = 0.0;
};

// Interlacing of the centered spectrum around the raw one (first and last
// links of the chain; the middle links are the sorted order of A~ itself).
// A' = A~ - tJ + tI with t = sqrt(rho)/n, so the rank-one interlacing
// lemmas give lambda_1(A') >= lambda_2(A~) outright but bound the bottom
// only as lambda_min(A~) >= lambda_min(A') - t; the +tI diagonal genuinely
// lifts the bottom edge of A' above that of A~.
inline InterlacingResult interlacing_check(const Graph& g, double rho) {
    if (!(rho > 0.0) || !(rho <= g.vertex_count()))
        throw std::invalid_argument("interlacing_check: need rho in (0, n]");
    const auto nm = normalized_matrices(g, rho);
    const auto lt = sym_eigenvalues(nm.a_tilde);
    const auto lb = sym_eigenvalues(nm.a_breve);
    const double scale = std::max({1.0, std::abs(lt.front()), std::abs(lt.back())});
    const double slack = tol::kInterlacingRel * scale;
    InterlacingResult r;
    r.t = std::sqrt(rho) / g.vertex_count();
    r.lambda1_breve = lb.front();
    r.lambda2_tilde = lt.size() > 1 ? lt[1] : lt[0];
    r.lambda_min_tilde = lt.back();
    r.lambda_min_breve = lb.back();
    r.top = r.lambda1_breve >= r.lambda2_tilde - slack;
    r.bottom = r.lambda_min_tilde >= r.lambda_min_breve - r.t - slack;
    return r;
}

}  // namespace izeta
