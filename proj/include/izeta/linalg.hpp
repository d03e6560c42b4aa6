#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace izeta {

// Thin LAPACK wrappers. Everything downstream (lemma checks, pole scans)
// leans on backward-stable dense solvers rather than anything hand-rolled.

// Full spectrum of a real symmetric matrix, descending.
inline std::vector<double> sym_eigenvalues_lapack(Eigen::MatrixXd m) {
    const auto n = static_cast<lapack_int>(m.rows());
    std::vector<double> w(static_cast<std::size_t>(n));
    lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, m.data(), n, w.data());
    if (info != 0) throw std::runtime_error("dsyevd failed to converge");
    std::reverse(w.begin(), w.end());
    return w;
}

// Complex spectrum of a real square matrix (Schur iteration, eigenvalues only).
inline std::vector<std::complex<double>> nonsym_eigenvalues_lapack(Eigen::MatrixXd m) {
    const auto n = static_cast<lapack_int>(m.rows());
    std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
    lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, m.data(), n,
                                    wr.data(), wi.data(), nullptr, 1, nullptr, 1);
    if (info != 0) throw std::runtime_error("dgeev: QR iteration failed to converge");
    std::vector<std::complex<double>> ev(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < ev.size(); ++i) ev[i] = {wr[i], wi[i]};
    return ev;
}

// Singular values of a complex matrix, ascending.
inline std::vector<double> singular_values_lapack(Eigen::MatrixXcd m) {
    const auto rows = static_cast<lapack_int>(m.rows());
    const auto cols = static_cast<lapack_int>(m.cols());
    const lapack_int k = std::min(rows, cols);
    std::vector<double> s(static_cast<std::size_t>(k));
    std::vector<double> superb(static_cast<std::size_t>(std::max<lapack_int>(1, k - 1)));
    lapack_int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'N', rows, cols,
                                     reinterpret_cast<lapack_complex_double*>(m.data()), rows,
                                     s.data(), nullptr, 1, nullptr, 1, superb.data());
    if (info != 0) throw std::runtime_error("zgesvd failed to converge");
    std::reverse(s.begin(), s.end());
    return s;
}

// det of a complex matrix by LU with partial pivoting.
inline std::complex<double> complex_determinant(const Eigen::MatrixXcd& m) {
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
}

inline double operator_norm(const Eigen::MatrixXcd& m) {
    auto s = singular_values_lapack(m);
    return s.empty() ? 0.0 : s.back();
}

}  // namespace izeta
