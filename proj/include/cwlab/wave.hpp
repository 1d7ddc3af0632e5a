#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cwlab/grid.hpp"
#include "cwlab/params.hpp"

namespace cwlab {

/// Self-similar-in-spirit contact profile and its derived fields at one time.
/// Satisfies R Theta / V = p_plus nodewise and U = kappa (gamma-1)/(gamma R) (ln Theta)_x.
struct WaveProfile {
    double t = 0.0;
    Field Theta, V, U;
    Field Theta_x;        // d Theta / dx
    Field U_x;            // d U / dx
    Field ln_theta_x;     // (ln Theta)_x
    Field ln_theta_xx;    // (ln Theta)_xx
    Field ln_theta_xxx;   // first-derivative stencil of (ln Theta)_xx
    Field F, G;           // momentum / energy residuals of the profile in the gas system
};

/// Scalar monitors recorded at every accepted profile step.
struct WaveRecord {
    double t = 0.0;
    double ln_theta_x_sq = 0.0;       // ||(ln Theta)_x||_L2^2
    double ln_theta_xx_sq = 0.0;      // ||(ln Theta)_xx||_L2^2
    double ln_theta_xxx_sq = 0.0;     // ||d^3 ln Theta||_L2^2
    double theta_x_sq = 0.0;          // integral Theta_x^2 dx
    double x_moment = 0.0;            // integral (ln Theta)_x^2 x dx
    double cum_ln_theta_x_sq = 0.0;   // integral_0^t ||(ln Theta)_x||^2 dtau
    double cum_ln_theta_xx_sq = 0.0;  // integral_0^t ||(ln Theta)_xx||^2 dtau
};

struct WaveTrajectory {
    Grid1D grid;
    GasParams gas;
    WaveParams wave;
    std::vector<WaveRecord> records;                    // one per accepted step
    std::vector<std::pair<double, Field>> snapshots;    // (t, Theta)
};

/// Measured initial-data integrals next to their claimed scaling laws.
struct BoundReport {
    double grad_sq = 0.0;           // ||Theta0_x||^2,            claimed scale alpha delta0
    double grad_sup = 0.0;          // sup |Theta0_x|,            claimed scale alpha delta0
    double curv_sq = 0.0;           // ||Theta0_xx||^2,           claimed scale alpha^3 delta0^2
    double grad_l1 = 0.0;           // total variation + tail,    equals |theta_plus - theta_minus|
    double weighted_grad_sq = 0.0;  // int Theta0_x^2 (1+alpha x), claimed scale alpha delta0
    double ratio_grad_sq = 0.0;
    double ratio_grad_sup = 0.0;
    double ratio_curv_sq = 0.0;
    double ratio_weighted = 0.0;
};

struct InviscidDistance {
    double theta = 0.0;  // ||Theta - theta_plus||_Lp
    double u = 0.0;      // ||U||_Lp
    double v = 0.0;      // ||V - v_plus||_Lp
};

/// Theta0(x) = theta_plus - (theta_plus - theta_minus) exp(1 - (1 + alpha x)^delta0).
Field initial_theta(const Grid1D& g, const GasParams& gas, const WaveParams& wave);

/// Evaluate the same formula at a single coordinate.
double initial_theta_at(double x, const GasParams& gas, const WaveParams& wave);

/// One backward-Euler step of Theta_t = a (ln Theta)_xx with Newton iteration
/// (absolute residual tolerance 1e-10, at most 25 iterations). Theta(0) is
/// pinned to theta_minus; the truncated far node holds its incoming value so
/// heavy-tailed data is not snapped onto theta_plus.
/// Throws numerical_error when Newton stalls or positivity is lost.
Field step_nonlinear_heat(const Grid1D& g, const Field& Theta, double dt, const GasParams& gas);

/// One Crank-Nicolson step of the linear equation Theta_t = a Theta_xx with
/// Dirichlet data: left pin, and right value moving to right_new (the input
/// field's last node supplies the old right value for the explicit half).
Field step_linear_heat(const Grid1D& g, const Field& Theta, double dt, double a,
                       double left, double right_new);

/// Derived profile fields from a temperature profile at time t.
WaveProfile build_profile(const Grid1D& g, const Field& Theta, double t, const GasParams& gas);

/// Initial-data integrals against their scaling laws. The L1 entry is the
/// total variation of the sampled monotone profile plus the analytic tail
/// remainder, so it is exact for any truncation length.
BoundReport verify_initial_bounds(const Grid1D& g, const GasParams& gas, const WaveParams& wave);

/// Integrate the profile equation to horizon T, recording monitors every step
/// and storing Theta at each snapshot time. dt0 defaults to dx; it is halved
/// on Newton failure and restored after recovery.
WaveTrajectory run_wave(const Grid1D& g, const GasParams& gas, const WaveParams& wave,
                        double T, const std::vector<double>& snapshot_times, double dt0 = 0.0);

/// Lp distances of (Theta, U, V) from the inviscid limit (theta_plus, 0, v_plus).
InviscidDistance inviscid_distance(const Grid1D& g, const WaveProfile& p,
                                   const GasParams& gas, double lp);

} // namespace cwlab
