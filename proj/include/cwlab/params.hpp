#pragma once

#include <cmath>

#include "cwlab/errors.hpp"

namespace cwlab {

/// Gas constants plus the end states of the two-sided equilibrium.
/// Derived members are filled in by make_params so that the boundary
/// pressure matches the far-field pressure exactly:
///   p_plus = R theta_plus / v_plus,  v_minus = R theta_minus / p_plus.
struct GasParams {
    double R = 1.0;            // gas constant
    double gamma = 5.0 / 3.0;  // adiabatic exponent, > 1
    double mu = 1.0;           // viscosity, > 0
    double kappa = 1.0;        // heat conductivity, > 0
    double theta_minus = 1.0;  // boundary temperature, > 0
    double theta_plus = 2.0;   // far-field temperature, > 0
    double v_plus = 2.0;       // far-field specific volume, > 0

    // derived
    double p_plus = 0.0;   // matched pressure
    double v_minus = 0.0;  // boundary specific volume
    double a = 0.0;        // diffusivity of the log-diffusion profile equation
    double c_v = 0.0;      // specific heat R/(gamma-1)
};

/// Shape parameters of the initial temperature profile
///   Theta0(x) = theta_plus - (theta_plus - theta_minus) exp(1 - (1+alpha x)^delta0).
struct WaveParams {
    double alpha = 1.0;           // inverse width scale, > 0
    double delta0 = 0.25;         // tail exponent, in (0, 1)
    double coupling_exponent = 2.0;  // q in alpha = kappa^-q for the small-kappa sweep
};

inline GasParams make_params(double R, double gamma, double mu, double kappa,
                             double theta_minus, double theta_plus, double v_plus) {
    if (!(R > 0.0) || !(mu > 0.0) || !(kappa > 0.0))
        throw config_error("make_params: R, mu, kappa must be positive");
    if (!(gamma > 1.0))
        throw config_error("make_params: gamma must exceed 1");
    if (!(theta_minus > 0.0) || !(theta_plus > 0.0) || !(v_plus > 0.0))
        throw config_error("make_params: theta_minus, theta_plus, v_plus must be positive");
    GasParams p;
    p.R = R;
    p.gamma = gamma;
    p.mu = mu;
    p.kappa = kappa;
    p.theta_minus = theta_minus;
    p.theta_plus = theta_plus;
    p.v_plus = v_plus;
    p.p_plus = R * theta_plus / v_plus;
    p.v_minus = R * theta_minus / p.p_plus;
    p.a = kappa * p.p_plus * (gamma - 1.0) / (gamma * R * R);
    p.c_v = R / (gamma - 1.0);
    return p;
}

inline GasParams make_params(const GasParams& raw) {
    return make_params(raw.R, raw.gamma, raw.mu, raw.kappa,
                       raw.theta_minus, raw.theta_plus, raw.v_plus);
}

inline void validate(const WaveParams& w) {
    if (!(w.alpha > 0.0))
        throw config_error("wave params: alpha must be positive");
    if (!(w.delta0 > 0.0) || !(w.delta0 < 1.0))
        throw config_error("wave params: delta0 must lie in (0, 1)");
}

} // namespace cwlab
