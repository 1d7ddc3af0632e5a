#include "cwlab/wave.hpp"

#include <algorithm>
#include <cmath>

#include "cwlab/tridiag.hpp"

namespace cwlab {

namespace {

constexpr double kNewtonTol = 1e-10;
constexpr int kNewtonCap = 25;

WaveRecord make_record(const Grid1D& g, const Field& Theta, double t,
                       const WaveRecord* prev) {
    WaveRecord r;
    r.t = t;
    const Field ln = Theta.log();
    const Field lnx = derivative(g, ln, 1);
    const Field lnxx = derivative(g, ln, 2);
    const Field lnxxx = derivative(g, lnxx, 1);
    const Field thx = derivative(g, Theta, 1);
    r.ln_theta_x_sq = trapz(g, lnx.square());
    r.ln_theta_xx_sq = trapz(g, lnxx.square());
    r.ln_theta_xxx_sq = trapz(g, lnxxx.square());
    r.theta_x_sq = trapz(g, thx.square());
    r.x_moment = trapz(g, lnx.square() * nodes(g));
    if (prev) {
        const double h = t - prev->t;
        r.cum_ln_theta_x_sq =
            prev->cum_ln_theta_x_sq + 0.5 * h * (prev->ln_theta_x_sq + r.ln_theta_x_sq);
        r.cum_ln_theta_xx_sq =
            prev->cum_ln_theta_xx_sq + 0.5 * h * (prev->ln_theta_xx_sq + r.ln_theta_xx_sq);
    }
    return r;
}

} // namespace

double initial_theta_at(double x, const GasParams& gas, const WaveParams& wave) {
    const double jump = gas.theta_plus - gas.theta_minus;
    return gas.theta_plus - jump * std::exp(1.0 - std::pow(1.0 + wave.alpha * x, wave.delta0));
}

Field initial_theta(const Grid1D& g, const GasParams& gas, const WaveParams& wave) {
    validate(wave);
    const Field x = nodes(g);
    const double jump = gas.theta_plus - gas.theta_minus;
    return gas.theta_plus - jump * (1.0 - (1.0 + wave.alpha * x).pow(wave.delta0)).exp();
}

Field step_nonlinear_heat(const Grid1D& g, const Field& Theta, double dt, const GasParams& gas) {
    const int n = g.n;
    if (Theta.size() != n) throw config_error("step_nonlinear_heat: field size mismatch");
    if (!(dt > 0.0)) throw config_error("step_nonlinear_heat: dt must be positive");
    if (Theta.minCoeff() <= 0.0)
        throw numerical_error("step_nonlinear_heat: non-positive input temperature");

    const double c = dt * gas.a / (g.dx * g.dx);
    Field next = Theta;
    next[0] = gas.theta_minus;
    // the truncated far end is passive: it holds whatever value flowed in,
    // so a heavy-tailed profile is not snapped onto theta_plus artificially
    const double far_hold = Theta[n - 1];

    Field resid(n), lower(n - 1), diag(n), upper(n - 1);
    for (int it = 0; it < kNewtonCap; ++it) {
        const Field ln = next.log();
        resid[0] = next[0] - gas.theta_minus;
        resid[n - 1] = next[n - 1] - far_hold;
        resid.segment(1, n - 2) =
            next.segment(1, n - 2) - Theta.segment(1, n - 2) -
            c * (ln.segment(2, n - 2) - 2.0 * ln.segment(1, n - 2) + ln.segment(0, n - 2));
        if (resid.abs().maxCoeff() < kNewtonTol) return next;

        diag.setOnes();
        lower.setZero();
        upper.setZero();
        diag.segment(1, n - 2) = 1.0 + 2.0 * c / next.segment(1, n - 2);
        // row i couples to i-1 via lower[i-1] and to i+1 via upper[i]
        lower.segment(0, n - 2) = -c / next.segment(0, n - 2);
        upper.segment(1, n - 2) = -c / next.segment(2, n - 2);
        lower[n - 2] = 0.0;  // last row is the Dirichlet pin
        upper[0] = 0.0;      // first row is the Dirichlet pin

        Field delta = solve_tridiagonal(lower, diag, upper, -resid);
        double lambda = 1.0;
        while (lambda > 1e-4 && (next + lambda * delta).minCoeff() <= 0.0) lambda *= 0.5;
        if (lambda <= 1e-4)
            throw numerical_error("step_nonlinear_heat: Newton step loses positivity");
        next += lambda * delta;
    }
    throw numerical_error("step_nonlinear_heat: Newton failed to converge in 25 iterations");
}

Field step_linear_heat(const Grid1D& g, const Field& Theta, double dt, double a,
                       double left, double right_new) {
    const int n = g.n;
    if (Theta.size() != n) throw config_error("step_linear_heat: field size mismatch");
    const double r = 0.5 * dt * a / (g.dx * g.dx);

    Field rhs(n), lower(n - 1), diag(n), upper(n - 1);
    rhs.segment(1, n - 2) =
        Theta.segment(1, n - 2) +
        r * (Theta.segment(2, n - 2) - 2.0 * Theta.segment(1, n - 2) + Theta.segment(0, n - 2));
    rhs[0] = left;
    rhs[n - 1] = right_new;

    diag.setConstant(1.0 + 2.0 * r);
    lower.setConstant(-r);
    upper.setConstant(-r);
    diag[0] = 1.0;
    upper[0] = 0.0;
    diag[n - 1] = 1.0;
    lower[n - 2] = 0.0;
    return solve_tridiagonal(lower, diag, upper, rhs);
}

WaveProfile build_profile(const Grid1D& g, const Field& Theta, double t, const GasParams& gas) {
    if (Theta.size() != g.n) throw config_error("build_profile: field size mismatch");
    if (Theta.minCoeff() <= 0.0)
        throw numerical_error("build_profile: non-positive temperature");
    WaveProfile p;
    p.t = t;
    p.Theta = Theta;
    p.V = gas.R * Theta / gas.p_plus;

    const Field ln = Theta.log();
    p.ln_theta_x = derivative(g, ln, 1);
    p.ln_theta_xx = derivative(g, ln, 2);
    p.ln_theta_xxx = derivative(g, p.ln_theta_xx, 1);
    p.Theta_x = derivative(g, Theta, 1);

    const double cU = gas.kappa * (gas.gamma - 1.0) / (gas.gamma * gas.R);
    p.U = cU * p.ln_theta_x;
    p.U_x = derivative(g, p.U, 1);

    // momentum residual has the closed form
    //   F = (kappa a (gamma-1) - mu p_plus gamma) / (R gamma) * ((ln Theta)_xx / Theta)_x
    const double cF = (gas.kappa * gas.a * (gas.gamma - 1.0) - gas.mu * gas.p_plus * gas.gamma) /
                      (gas.R * gas.gamma);
    p.F = cF * derivative(g, Field(p.ln_theta_xx / Theta), 1);
    p.G = -gas.mu * p.U_x.square() / p.V;
    return p;
}

BoundReport verify_initial_bounds(const Grid1D& g, const GasParams& gas, const WaveParams& wave) {
    validate(wave);
    BoundReport b;
    const Field Theta0 = initial_theta(g, gas, wave);
    const Field d1 = derivative(g, Theta0, 1);
    const Field d2 = derivative(g, Theta0, 2);

    b.grad_sq = trapz(g, d1.square());
    b.grad_sup = d1.abs().maxCoeff();
    b.curv_sq = trapz(g, d2.square());
    b.weighted_grad_sq = weighted_integral(g, d1, wave.alpha);
    // monotone profile: total variation telescopes; add the analytic remainder
    // theta_plus - Theta0(L) so truncation cannot shave the L1 mass
    b.grad_l1 = (Theta0.tail(g.n - 1) - Theta0.head(g.n - 1)).abs().sum() +
                std::abs(gas.theta_plus - Theta0[g.n - 1]);

    const double ad = wave.alpha * wave.delta0;
    b.ratio_grad_sq = b.grad_sq / ad;
    b.ratio_grad_sup = b.grad_sup / ad;
    b.ratio_curv_sq = b.curv_sq / (wave.alpha * wave.alpha * wave.alpha * wave.delta0 * wave.delta0);
    b.ratio_weighted = b.weighted_grad_sq / ad;
    return b;
}

WaveTrajectory run_wave(const Grid1D& g, const GasParams& gas, const WaveParams& wave,
                        double T, const std::vector<double>& snapshot_times, double dt0) {
    validate(wave);
    if (!(T > 0.0)) throw config_error("run_wave: horizon must be positive");
    std::vector<double> snaps = snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    for (double s : snaps)
        if (s < 0.0 || s > T) throw config_error("run_wave: snapshot time outside [0, T]");

    WaveTrajectory traj;
    traj.grid = g;
    traj.gas = gas;
    traj.wave = wave;

    Field Theta = initial_theta(g, gas, wave);
    double t = 0.0;
    const double dt_base = dt0 > 0.0 ? dt0 : g.dx;
    double dt_cur = dt_base;

    traj.records.push_back(make_record(g, Theta, 0.0, nullptr));
    std::size_t next_snap = 0;
    while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) {
        traj.snapshots.emplace_back(0.0, Theta);
        ++next_snap;
    }

    const double t_eps = 1e-12 * std::max(1.0, T);
    int successes = 0;
    while (t < T - t_eps) {
        double dt = std::min(dt_cur, T - t);
        if (next_snap < snaps.size()) dt = std::min(dt, snaps[next_snap] - t);
        if (dt <= 0.0) dt = t_eps;

        bool accepted = false;
        for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
            try {
                Theta = step_nonlinear_heat(g, Theta, dt, gas);
                accepted = true;
            } catch (const numerical_error&) {
                dt *= 0.5;
                dt_cur *= 0.5;
                successes = 0;
                if (dt_cur < 1e-14)
                    throw numerical_error("run_wave: time step collapsed below 1e-14");
            }
        }
        if (!accepted) throw numerical_error("run_wave: persistent Newton failure");
        t += dt;

        if (++successes > 20 && dt_cur < dt_base) {
            dt_cur = std::min(dt_base, 2.0 * dt_cur);
            successes = 0;
        }

        traj.records.push_back(make_record(g, Theta, t, &traj.records.back()));
        while (next_snap < snaps.size() && t >= snaps[next_snap] - t_eps) {
            traj.snapshots.emplace_back(t, Theta);
            ++next_snap;
        }
    }
    return traj;
}

InviscidDistance inviscid_distance(const Grid1D& g, const WaveProfile& p,
                                   const GasParams& gas, double lp) {
    InviscidDistance d;
    d.theta = norm(g, Field(p.Theta - gas.theta_plus), Norm::Lp, lp);
    d.u = norm(g, p.U, Norm::Lp, lp);
    d.v = norm(g, Field(p.V - gas.v_plus), Norm::Lp, lp);
    return d;
}

} // namespace cwlab
