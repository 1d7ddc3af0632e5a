#pragma once

#include <functional>
#include <vector>

#include "cwlab/grid.hpp"
#include "cwlab/params.hpp"
#include "cwlab/wave.hpp"

namespace cwlab {

/// Quadrature controls for the half-line heat-kernel solution.
struct KernelConfig {
    int nodes_per_panel = 16;   // Gauss-Legendre nodes per panel
    double tail_sigmas = 8.0;   // integrate to x + tail_sigmas * sqrt(4 a t)
    double t_min = 1e-8;        // below this the initial profile is returned
    double panel_scale = 1.0;   // >1 shrinks panels (refinement for invariance checks)
};

using Profile0 = std::function<double(double)>;

/// Odd-reflection heat-kernel solution on the half line with Dirichlet value
/// theta_minus at x = 0:
///   theta2(x,t) = theta_minus + int_0^inf (theta0(h) - theta_minus)
///                 (4 pi a t)^{-1/2} [e^{-(h-x)^2/4at} - e^{-(h+x)^2/4at}] dh.
/// trans_width pads the integration domain beyond the Gaussian tails so the
/// initial transition zone is always covered.
double theta2_point(double x, double t, const Profile0& theta0, double a,
                    double theta_minus, double trans_width, const KernelConfig& cfg = {});

/// theta2 for the contact-wave initial data (trans_width = 10 / alpha).
double theta2_exact(double x, double t, const GasParams& gas, const WaveParams& wave,
                    const KernelConfig& cfg = {});

Field theta2_on_grid(const Grid1D& g, double t, const GasParams& gas, const WaveParams& wave,
                     const KernelConfig& cfg = {});

/// Max interior residual of the centered discretisation
///   (theta2(t+dt) - theta2(t-dt)) / (2 dt) - a D2 theta2(t)
/// on the given grid; second-order small in (dx, dt) since theta2 solves the PDE.
double theta2_residual(const Grid1D& g, double t, double dt_sample, const GasParams& gas,
                       const WaveParams& wave, const KernelConfig& cfg = {});

struct KernelSeries {
    std::vector<double> t;
    std::vector<double> grad_sq;     // ||theta2_x||^2 at each time
    std::vector<double> cumulative;  // trapezoid of grad_sq from t = 0
};

/// ||theta2_x||^2 series and its running time integral (t = 0 uses Theta0).
KernelSeries check_bound_2_2(const Grid1D& g, const std::vector<double>& times,
                             const GasParams& gas, const WaveParams& wave,
                             const KernelConfig& cfg = {});

struct CompareSeries {
    std::vector<double> t;
    std::vector<double> diff_sq;   // ||Theta - theta2||^2
    std::vector<double> combined;  // diff_sq + int_0^t ||(ln Theta)_x||^2 dtau
};

/// Distance between the nonlinear profile snapshots and the kernel solution,
/// using the trajectory's own cumulative gradient integral.
CompareSeries compare_theta_theta2(const WaveTrajectory& traj, const KernelConfig& cfg = {});

/// Gauss-Legendre nodes and weights on [-1, 1], computed once per order by
/// Newton iteration on the Legendre recurrence.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

} // namespace cwlab
