#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "cwlab/errors.hpp"

namespace cwlab {

using Field = Eigen::ArrayXd;

/// Uniform grid on [0, L], nodes x_i = i dx, i = 0..n-1.
struct Grid1D {
    double length = 0.0;
    int n = 0;
    double dx = 0.0;
};

inline Grid1D make_grid(double length, int n) {
    if (!(length > 0.0)) throw config_error("grid: length must be positive");
    if (n < 4) throw config_error("grid: need at least 4 nodes");
    return {length, n, length / (n - 1)};
}

inline Field nodes(const Grid1D& g) {
    return Eigen::ArrayXd::LinSpaced(g.n, 0.0, g.length);
}

// ---------------------------------------------------------------------------
// finite differences: second-order central stencils in the interior,
// second-order one-sided stencils at both ends
// ---------------------------------------------------------------------------

inline void derivative1_into(const Grid1D& g, const Field& f, Field& out) {
    const int n = g.n;
    if (n < 3) throw config_error("derivative: grid too small for first-derivative stencil");
    const double inv2dx = 1.0 / (2.0 * g.dx);
    out.resize(n);
    out.segment(1, n - 2) = (f.segment(2, n - 2) - f.segment(0, n - 2)) * inv2dx;
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2dx;
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2dx;
}

inline void derivative2_into(const Grid1D& g, const Field& f, Field& out) {
    const int n = g.n;
    if (n < 4) throw config_error("derivative: grid too small for second-derivative stencil");
    const double invdx2 = 1.0 / (g.dx * g.dx);
    out.resize(n);
    out.segment(1, n - 2) =
        (f.segment(2, n - 2) - 2.0 * f.segment(1, n - 2) + f.segment(0, n - 2)) * invdx2;
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * invdx2;
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * invdx2;
}

/// order 1, 2 direct stencils; order 3 is the first-derivative stencil applied
/// to the discrete second derivative (keeps every stage second order).
inline Field derivative(const Grid1D& g, const Field& f, int order = 1) {
    if (f.size() != g.n) throw config_error("derivative: field size does not match grid");
    Field out;
    switch (order) {
        case 1: derivative1_into(g, f, out); return out;
        case 2: derivative2_into(g, f, out); return out;
        case 3: {
            Field d2;
            derivative2_into(g, f, d2);
            derivative1_into(g, d2, out);
            return out;
        }
        default: throw config_error("derivative: order must be 1, 2 or 3");
    }
}

// ---------------------------------------------------------------------------
// quadrature and norms: composite trapezoid throughout
// ---------------------------------------------------------------------------

inline double trapz(const Grid1D& g, const Field& f) {
    if (f.size() != g.n) throw config_error("trapz: field size does not match grid");
    return g.dx * (f.sum() - 0.5 * (f[0] + f[g.n - 1]));
}

enum class Norm { L1, L2, Lp, Sup, H1 };

inline double norm(const Grid1D& g, const Field& f, Norm kind, double p = 2.0) {
    switch (kind) {
        case Norm::L1: return trapz(g, f.abs());
        case Norm::L2: return std::sqrt(trapz(g, f.square()));
        case Norm::Lp:
            if (!(p >= 1.0)) throw config_error("norm: p must be >= 1");
            return std::pow(trapz(g, f.abs().pow(p)), 1.0 / p);
        case Norm::Sup: return f.abs().maxCoeff();
        case Norm::H1: {
            const Field d1 = derivative(g, f, 1);
            return std::sqrt(trapz(g, f.square()) + trapz(g, d1.square()));
        }
    }
    throw config_error("norm: unknown kind");
}

inline double norm_l2(const Grid1D& g, const Field& f) { return norm(g, f, Norm::L2); }

/// integral of f^2 (1 + alpha x) dx; alpha = 1 gives the plain (1 + x) weight.
inline double weighted_integral(const Grid1D& g, const Field& f, double alpha = 1.0) {
    const Field w = 1.0 + alpha * nodes(g);
    return trapz(g, f.square() * w);
}

} // namespace cwlab
