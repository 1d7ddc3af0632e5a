#pragma once

#include <Eigen/Dense>

#include "cwlab/errors.hpp"

namespace cwlab {

/// Thomas elimination for a tridiagonal system.
/// lower has n-1 entries (row i couples to i-1 via lower[i-1]),
/// diag n entries, upper n-1 entries. Overwrites nothing; returns x.
/// The calling stencils are diagonally dominant up to O(dx^2) wiggle,
/// which is ample for elimination without pivoting.
inline Eigen::ArrayXd solve_tridiagonal(const Eigen::ArrayXd& lower,
                                        const Eigen::ArrayXd& diag,
                                        const Eigen::ArrayXd& upper,
                                        const Eigen::ArrayXd& rhs) {
    const Eigen::Index n = diag.size();
    if (lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n)
        throw config_error("solve_tridiagonal: inconsistent band sizes");

    Eigen::ArrayXd c(n - 1), d(n), x(n);
    double piv = diag[0];
    if (piv == 0.0) throw numerical_error("solve_tridiagonal: zero pivot at row 0");
    c[0] = upper[0] / piv;
    d[0] = rhs[0] / piv;
    for (Eigen::Index i = 1; i < n; ++i) {
        piv = diag[i] - lower[i - 1] * c[i - 1];
        if (piv == 0.0) throw numerical_error("solve_tridiagonal: zero pivot");
        if (i < n - 1) c[i] = upper[i] / piv;
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / piv;
    }
    x[n - 1] = d[n - 1];
    for (Eigen::Index i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

} // namespace cwlab
