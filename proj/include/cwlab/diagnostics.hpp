#pragma once

#include <vector>

#include "cwlab/grid.hpp"
#include "cwlab/params.hpp"
#include "cwlab/state.hpp"
#include "cwlab/wave.hpp"

namespace cwlab {

struct PerturbationFields {
    Field phi, psi, zeta;  // v - V, u - U, theta - Theta
};

/// Difference between state and profile; the two must carry the same time.
PerturbationFields perturbation(const GasState& s, const WaveProfile& p);

/// Phi(z) = z - ln z - 1 (nonnegative, zero only at z = 1).
double phi_func(double z);

/// Psi(z) = 1/z + ln z - 1 (nonnegative, zero only at z = 1).
double psi_func(double z);

/// Relative-entropy energy of the perturbed state against the profile:
///   integral ( psi^2/2 + R Theta Phi(v/V) + c_v Theta Phi(theta/Theta) ) dx.
double energy_functional(const Grid1D& g, const GasState& s, const WaveProfile& p,
                         const GasParams& gas);

struct Oscillation {
    double theta = 0.0;  // max theta - min theta
    double rho = 0.0;    // max 1/v - min 1/v
};

Oscillation oscillation(const GasState& s);

struct DecayFit {
    double slope = 0.0;      // d log q / d log (1 + t)
    double intercept = 0.0;  // log q at t = 0
    double rms_residual = 0.0;
    int points = 0;
    bool vacuous = false;  // too few positive samples in the window
};

/// Least squares of log(q) on log(1 + t) over the window [t_lo, t_hi].
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& q,
                   double t_lo, double t_hi);

/// Instantaneous integrands of the weighted Poincare estimate:
/// lhs = integral Theta_x^2 (phi^2 + zeta^2) dx,
/// rhs = ||phi_x||^2 + ||zeta_x||^2.
struct PoincareIncrement {
    double lhs = 0.0;
    double rhs = 0.0;
};

PoincareIncrement poincare_increment(const Grid1D& g, const WaveProfile& p,
                                     const PerturbationFields& f);

/// Sup-square to product-of-norms ratios of the profile interpolation
/// inequalities: first |Theta_x|^2 vs ||(ln T)_x|| ||(ln T)_xx||, second
/// |U_x|^2 vs ||(ln T)_xx|| ||(ln T)_xxx||.
struct InterpolationRatios {
    double theta_x = 0.0;
    double u_x = 0.0;
};

InterpolationRatios interpolation_ratios(const Grid1D& g, const WaveProfile& p);

} // namespace cwlab
