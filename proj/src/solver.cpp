#include "cwlab/solver.hpp"

#include <algorithm>
#include <cmath>

namespace cwlab {

namespace {

struct NsWorkspace {
    Field ux, p, px, w, wx, q, qx;
    Field dv, du, dtheta;
    Field v_mid, u_mid, th_mid;
};

/// Right-hand side of the gas system with boundary handling baked in.
void ns_rhs(const Grid1D& g, const GasParams& gas, const Field& v, const Field& u,
            const Field& theta, NsWorkspace& ws) {
    const int n = g.n;

    derivative1_into(g, u, ws.ux);
    ws.ux[0] = (gas.R * gas.theta_minus - gas.p_plus * v[0]) / gas.mu;

    ws.p = gas.R * theta / v;
    derivative1_into(g, ws.p, ws.px);

    ws.w = ws.ux / v;
    derivative1_into(g, ws.w, ws.wx);

    derivative1_into(g, theta, ws.q);
    ws.q /= v;
    derivative1_into(g, ws.q, ws.qx);

    ws.dv = ws.ux;
    ws.du = -ws.px + gas.mu * ws.wx;
    ws.dtheta =
        (gas.kappa * ws.qx + (gas.mu * ws.ux - gas.R * theta) * ws.ux / v) / gas.c_v;

    ws.dtheta[0] = 0.0;  // boundary temperature pin
    ws.dv[n - 1] = 0.0;  // far-field clamp
    ws.du[n - 1] = 0.0;
    ws.dtheta[n - 1] = 0.0;
}

bool midpoint_step(const Grid1D& g, const GasParams& gas, const GasState& s, double dt,
                   GasState& out, NsWorkspace& ws) {
    ns_rhs(g, gas, s.v, s.u, s.theta, ws);
    ws.v_mid = s.v + 0.5 * dt * ws.dv;
    ws.u_mid = s.u + 0.5 * dt * ws.du;
    ws.th_mid = s.theta + 0.5 * dt * ws.dtheta;
    if (!(ws.v_mid.minCoeff() > 0.0) || !(ws.th_mid.minCoeff() > 0.0)) return false;

    ns_rhs(g, gas, ws.v_mid, ws.u_mid, ws.th_mid, ws);
    out.t = s.t + dt;
    out.v = s.v + dt * ws.dv;
    out.u = s.u + dt * ws.du;
    out.theta = s.theta + dt * ws.dtheta;
    return out.v.minCoeff() > 0.0 && out.theta.minCoeff() > 0.0;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return (splitmix64(state) >> 11) * 0x1.0p-53;
}

double compact_bump(double s) {
    const double s2 = s * s;
    return s2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s2)) : 0.0;
}

} // namespace

double stable_dt(const Grid1D& g, const GasParams& gas, const GasState& s,
                 const StepControl& ctl) {
    if (!(ctl.cfl_factor > 0.0) || ctl.cfl_factor > 0.5)
        throw config_error("stable_dt: cfl_factor must lie in (0, 0.5]");
    const double parabolic =
        ctl.cfl_factor * g.dx * g.dx * s.v.minCoeff() / std::max(gas.mu, gas.kappa / gas.c_v);
    const double speed = (s.u.abs() + (gas.gamma * gas.R * s.theta / s.v).sqrt()).maxCoeff();
    const double advective = ctl.cfl_factor * g.dx / speed;
    return std::min({parabolic, advective, ctl.dt_max});
}

GasState step_ns(const Grid1D& g, const GasParams& gas, const GasState& s, double dt) {
    if (s.v.size() != g.n || s.u.size() != g.n || s.theta.size() != g.n)
        throw config_error("step_ns: field size mismatch");
    if (!(dt > 0.0)) throw config_error("step_ns: dt must be positive");
    NsWorkspace ws;
    GasState out;
    if (!midpoint_step(g, gas, s, dt, out, ws))
        throw numerical_error("step_ns: positivity lost within the step");
    return out;
}

Field sample_shape(const Grid1D& g, const PerturbationComponent& c, std::uint64_t seed) {
    const Field x = nodes(g);
    Field f = Field::Zero(g.n);
    if (!(c.width > 0.0)) throw config_error("perturbation: width must be positive");
    switch (c.shape) {
        case Shape::Gaussian:
            f = c.amplitude * (-((x - c.center) / c.width).square() * 0.5).exp();
            break;
        case Shape::CompactBump:
            for (int i = 0; i < g.n; ++i)
                f[i] = c.amplitude * compact_bump((x[i] - c.center) / c.width);
            break;
        case Shape::DerivativeHeavy:
            for (int i = 0; i < g.n; ++i)
                f[i] = c.amplitude * std::sin(c.wavenumber * (x[i] - c.center)) *
                       compact_bump((x[i] - c.center) / c.width);
            break;
        case Shape::RandomBumps: {
            std::uint64_t rng = seed;
            for (int b = 0; b < 3; ++b) {
                const double w = c.width * (0.5 + uniform01(rng));
                const double lo = std::max(c.center - 2.0 * c.width, w);
                const double hi = c.center + 2.0 * c.width;
                const double ctr = lo + (hi - lo) * uniform01(rng);
                const double amp = c.amplitude * (2.0 * uniform01(rng) - 1.0);
                for (int i = 0; i < g.n; ++i) f[i] += amp * compact_bump((x[i] - ctr) / w);
            }
            break;
        }
    }
    return f;
}

GasState initial_perturbed_state(const Grid1D& g, const GasParams& gas,
                                 const WaveProfile& profile, const PerturbationSpec& spec) {
    Field phi = Field::Zero(g.n), psi = Field::Zero(g.n), zeta = Field::Zero(g.n);
    std::uint64_t seed = spec.seed;
    for (const auto& c : spec.phi) phi += sample_shape(g, c, seed++);
    for (const auto& c : spec.psi) psi += sample_shape(g, c, seed++);
    for (const auto& c : spec.zeta) zeta += sample_shape(g, c, seed++);

    const double zeta_scale = std::max(1.0, zeta.abs().maxCoeff());
    if (std::abs(zeta[0]) > 1e-12 * zeta_scale)
        throw config_error(
            "perturbation: zeta must vanish at x = 0; center compact shapes past their width");

    if (spec.target_l2 > 0.0) {
        const double measured = std::sqrt(trapz(g, phi.square()) + trapz(g, psi.square()) +
                                          trapz(g, zeta.square()));
        if (measured <= 0.0)
            throw config_error("perturbation: cannot normalise a zero perturbation");
        const double scale = spec.target_l2 / measured;
        phi *= scale;
        psi *= scale;
        zeta *= scale;
    }

    if (spec.phi0_boundary != 0.0) {
        const Field x = nodes(g);
        phi += spec.phi0_boundary *
               (-(x / spec.phi0_boundary_width).square() * 0.5).exp();
    }

    GasState s;
    s.t = profile.t;
    s.v = profile.V + phi;
    s.u = profile.U + psi;
    s.theta = profile.Theta + zeta;
    if (!positive(s))
        throw config_error("perturbation: perturbed state loses positivity");
    return s;
}

RunAccounting run_coupled(const Grid1D& g, const GasParams& gas, const WaveParams& wave,
                          const GasState& initial, double T,
                          const std::vector<double>& snapshot_times, const StepControl& ctl,
                          const SnapshotHook& hook) {
    validate(wave);
    if (!(T > 0.0)) throw config_error("run_coupled: horizon must be positive");
    std::vector<double> snaps = snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    if (snaps.empty() || snaps.front() > 0.0) snaps.insert(snaps.begin(), 0.0);
    if (snaps.back() < T) snaps.push_back(T);
    for (double s : snaps)
        if (s < 0.0 || s > T) throw config_error("run_coupled: snapshot outside [0, T]");

    const double t_eps = 1e-12 * std::max(1.0, T);
    const int station = static_cast<int>(std::lround(0.9 * (g.n - 1)));

    RunAccounting acct;
    GasState state = initial;
    GasState next;
    NsWorkspace ws;
    Field Theta_w = initial_theta(g, gas, wave);
    double t_wave = 0.0;
    const double mass0 = trapz(g, state.v);
    double flux_acc = 0.0;

    auto note_extrema = [&](const GasState& s) {
        acct.min_v = std::min(acct.min_v, s.v.minCoeff());
        acct.min_theta = std::min(acct.min_theta, s.theta.minCoeff());
        acct.max_v = std::max(acct.max_v, s.v.maxCoeff());
        acct.max_theta = std::max(acct.max_theta, s.theta.maxCoeff());
    };
    note_extrema(state);

    auto emit = [&](double t_snap) {
        while (t_wave < t_snap - t_eps) {
            const double dtw = std::min(g.dx, t_snap - t_wave);
            Theta_w = step_nonlinear_heat(g, Theta_w, dtw, gas);
            t_wave += dtw;
        }
        WaveProfile prof = build_profile(g, Theta_w, t_snap, gas);
        if (!finite(state))
            throw numerical_error("run_coupled: non-finite state at t = " +
                                  std::to_string(t_snap));
        acct.station_dev = std::max({std::abs(state.v[station] - prof.V[station]),
                                     std::abs(state.u[station] - prof.U[station]),
                                     std::abs(state.theta[station] - prof.Theta[station])});
        if (ctl.monitor_contamination && acct.station_dev > ctl.contamination_eps)
            throw numerical_error(
                "run_coupled: boundary contamination at the 0.9 L station; domain too short");
        acct.mass_residual = trapz(g, state.v) - mass0 - flux_acc;
        if (hook) hook(state, prof, acct);
    };

    std::size_t next_snap = 0;
    while (next_snap < snaps.size() && snaps[next_snap] <= t_eps) {
        emit(0.0);
        ++next_snap;
    }

    double t = 0.0;
    while (t < T - t_eps) {
        double dt = std::min(stable_dt(g, gas, state, ctl), T - t);
        if (next_snap < snaps.size()) dt = std::min(dt, snaps[next_snap] - t);

        bool ok = false;
        for (int attempt = 0; attempt < 30 && !ok; ++attempt) {
            ok = midpoint_step(g, gas, state, dt, next, ws);
            if (!ok) {
                dt *= 0.5;
                if (dt < 1e-15)
                    throw numerical_error("run_coupled: time step collapsed; positivity lost");
            }
        }
        if (!ok) throw numerical_error("run_coupled: persistent positivity failure");

        flux_acc += dt * (ws.u_mid[g.n - 1] - ws.u_mid[0]);
        state = next;
        t = state.t;
        ++acct.steps;
        note_extrema(state);

        while (next_snap < snaps.size() && t >= snaps[next_snap] - t_eps) {
            emit(snaps[next_snap]);
            ++next_snap;
        }
    }
    return acct;
}

} // namespace cwlab
