#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "cwlab/grid.hpp"
#include "cwlab/params.hpp"
#include "cwlab/state.hpp"
#include "cwlab/wave.hpp"

namespace cwlab {

/// Explicit time-step controls. cfl_factor is applied to both the parabolic
/// bound dx^2 min(v)/max(mu, kappa/c_v) and the advective bound
/// dx / max(|u| + sqrt(gamma R theta / v)).
struct StepControl {
    double cfl_factor = 0.2;  // capped at 0.5
    double dt_max = std::numeric_limits<double>::infinity();
    double contamination_eps = 1e-8;  // perturbation bound at the 0.9 L station
    bool monitor_contamination = true;
};

double stable_dt(const Grid1D& g, const GasParams& gas, const GasState& s,
                 const StepControl& ctl);

/// One explicit-midpoint step of the gas system in Lagrangian coordinates:
///   v_t = u_x,
///   u_t = -(R theta / v)_x + mu (u_x / v)_x,
///   c_v theta_t = -R (theta/v) u_x + kappa (theta_x / v)_x + mu u_x^2 / v,
/// with theta(0) pinned to theta_minus, the truncated far node frozen at its
/// initial values (passive truncation, matching the profile solver), and the
/// stress condition enforced through the exact algebraic boundary value
/// u_x(0) = (R theta_minus - p_plus v(0)) / mu, which also drives v(0).
GasState step_ns(const Grid1D& g, const GasParams& gas, const GasState& s, double dt);

// ---------------------------------------------------------------------------
// perturbations
// ---------------------------------------------------------------------------

enum class Shape { Gaussian, CompactBump, DerivativeHeavy, RandomBumps };

struct PerturbationComponent {
    Shape shape = Shape::CompactBump;
    double amplitude = 0.0;
    double center = 5.0;
    double width = 1.0;
    double wavenumber = 0.0;  // oscillation rate for the derivative-heavy shape
};

/// Perturbation recipe. Components build (phi, psi, zeta) bumps; zeta bumps
/// must vanish at x = 0 (rejected otherwise). phi0_boundary adds
/// phi0_boundary * exp(-x^2 / (2 w_b^2)) to phi, giving phi(0) an exact value
/// for the boundary-relaxation comparison; it is exempt from rescaling.
/// target_l2 > 0 rescales the bump components so the combined L2 norm of
/// (phi, psi, zeta) lands exactly on it.
struct PerturbationSpec {
    std::vector<PerturbationComponent> phi, psi, zeta;
    double phi0_boundary = 0.0;
    double phi0_boundary_width = 0.4;
    double target_l2 = -1.0;
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

/// Sample one component on the grid (shared by tests and the state builder).
Field sample_shape(const Grid1D& g, const PerturbationComponent& c, std::uint64_t seed);

/// Gas state (V + phi, U + psi, Theta + zeta) at the profile's time.
/// Throws config_error if a zeta component fails to vanish at x = 0 or the
/// perturbed state loses positivity.
GasState initial_perturbed_state(const Grid1D& g, const GasParams& gas,
                                 const WaveProfile& profile, const PerturbationSpec& spec);

/// Exact relaxation law of the boundary specific-volume perturbation:
/// phi(0, t) = phi0_at_0 * exp(-p_plus t / mu).
inline double boundary_ode_reference(double t, double phi0_at_0, const GasParams& gas) {
    return phi0_at_0 * std::exp(-gas.p_plus * t / gas.mu);
}

// ---------------------------------------------------------------------------
// coupled run
// ---------------------------------------------------------------------------

struct RunAccounting {
    double min_v = std::numeric_limits<double>::infinity();
    double min_theta = std::numeric_limits<double>::infinity();
    double max_v = 0.0;
    double max_theta = 0.0;
    double mass_residual = 0.0;  // trapz(v) - trapz(v0) - accumulated boundary flux
    long steps = 0;
    double station_dev = 0.0;    // last perturbation magnitude at the 0.9 L station
};

using SnapshotHook =
    std::function<void(const GasState&, const WaveProfile&, const RunAccounting&)>;

/// Advance the gas with step_ns and the profile with backward-Euler substeps
/// (dt <= dx) so both land exactly on every snapshot time, invoking the hook
/// there. Aborts with numerical_error on lost positivity, non-finite fields,
/// or when the perturbation at the 0.9 L station exceeds contamination_eps
/// ("domain too short").
RunAccounting run_coupled(const Grid1D& g, const GasParams& gas, const WaveParams& wave,
                          const GasState& initial, double T,
                          const std::vector<double>& snapshot_times, const StepControl& ctl,
                          const SnapshotHook& hook);

} // namespace cwlab
