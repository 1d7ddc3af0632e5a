#include "cwlab/kernel.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace cwlab {

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex guard;
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 2 || n > 128) throw config_error("gauss_legendre: order out of range [2,128]");

    std::vector<double> x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double z_prev, pp = 0.0;
        do {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            z_prev = z;
            z -= p0 / pp;
        } while (std::abs(z - z_prev) > 1e-15);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

namespace {

double kernel_quadrature(double x, double t, const Profile0& theta0, double a,
                         double theta_minus, double trans_width, const KernelConfig& cfg) {
    const double width = std::sqrt(4.0 * a * t);
    const double upper = x + cfg.tail_sigmas * width + trans_width;
    const double panel = 0.5 * std::min(width, std::max(trans_width * 0.1, 1e-3)) /
                         std::max(cfg.panel_scale, 1e-3);
    const int n_panels = std::max(1, static_cast<int>(std::ceil(upper / panel)));
    const auto& [gx, gw] = gauss_legendre(cfg.nodes_per_panel);

    const double inv4at = 1.0 / (4.0 * a * t);
    const double norm_factor = 1.0 / std::sqrt(4.0 * M_PI * a * t);
    const double h_step = upper / n_panels;

    double acc = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        const double h0 = p * h_step;
        const double half = 0.5 * h_step;
        const double mid = h0 + half;
        double panel_acc = 0.0;
        for (std::size_t q = 0; q < gx.size(); ++q) {
            const double h = mid + half * gx[q];
            const double dm = h - x;
            const double dp = h + x;
            const double g = std::exp(-dm * dm * inv4at) - std::exp(-dp * dp * inv4at);
            panel_acc += gw[q] * (theta0(h) - theta_minus) * g;
        }
        acc += half * panel_acc;
    }
    return theta_minus + norm_factor * acc;
}

} // namespace

double theta2_point(double x, double t, const Profile0& theta0, double a,
                    double theta_minus, double trans_width, const KernelConfig& cfg) {
    if (!(a > 0.0)) throw config_error("theta2_point: diffusivity must be positive");
    if (x < 0.0) throw config_error("theta2_point: x must be nonnegative");
    if (t < cfg.t_min) return theta0(x);
    if (x == 0.0) return theta_minus;  // integrand is identically zero at x = 0
    return kernel_quadrature(x, t, theta0, a, theta_minus, trans_width, cfg);
}

double theta2_exact(double x, double t, const GasParams& gas, const WaveParams& wave,
                    const KernelConfig& cfg) {
    const auto profile = [&](double h) { return initial_theta_at(h, gas, wave); };
    return theta2_point(x, t, profile, gas.a, gas.theta_minus, 10.0 / wave.alpha, cfg);
}

Field theta2_on_grid(const Grid1D& g, double t, const GasParams& gas, const WaveParams& wave,
                     const KernelConfig& cfg) {
    Field out(g.n);
    for (int i = 0; i < g.n; ++i) out[i] = theta2_exact(i * g.dx, t, gas, wave, cfg);
    return out;
}

double theta2_residual(const Grid1D& g, double t, double dt_sample, const GasParams& gas,
                       const WaveParams& wave, const KernelConfig& cfg) {
    if (!(t - dt_sample > cfg.t_min))
        throw config_error("theta2_residual: need t - dt_sample above the small-time cutoff");
    const Field lo = theta2_on_grid(g, t - dt_sample, gas, wave, cfg);
    const Field mid = theta2_on_grid(g, t, gas, wave, cfg);
    const Field hi = theta2_on_grid(g, t + dt_sample, gas, wave, cfg);
    const Field dt_term = (hi - lo) / (2.0 * dt_sample);
    Field dxx;
    derivative2_into(g, mid, dxx);
    const Field resid = dt_term - gas.a * dxx;
    // ends use one-sided stencils whose error constant is larger; the PDE
    // residual statement is interior
    return resid.segment(1, g.n - 2).abs().maxCoeff();
}

KernelSeries check_bound_2_2(const Grid1D& g, const std::vector<double>& times,
                             const GasParams& gas, const WaveParams& wave,
                             const KernelConfig& cfg) {
    KernelSeries s;
    double cum = 0.0, prev_t = 0.0, prev_val = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        if (k > 0 && t <= prev_t) throw config_error("check_bound_2_2: times must increase");
        const Field th = t < cfg.t_min ? initial_theta(g, gas, wave)
                                       : theta2_on_grid(g, t, gas, wave, cfg);
        const Field dx1 = derivative(g, th, 1);
        const double val = trapz(g, dx1.square());
        if (k > 0) cum += 0.5 * (t - prev_t) * (prev_val + val);
        s.t.push_back(t);
        s.grad_sq.push_back(val);
        s.cumulative.push_back(cum);
        prev_t = t;
        prev_val = val;
    }
    return s;
}

CompareSeries compare_theta_theta2(const WaveTrajectory& traj, const KernelConfig& cfg) {
    CompareSeries s;
    const Grid1D& g = traj.grid;
    std::size_t rec = 0;
    for (const auto& [t, Theta] : traj.snapshots) {
        while (rec + 1 < traj.records.size() &&
               std::abs(traj.records[rec + 1].t - t) <= std::abs(traj.records[rec].t - t))
            ++rec;
        const Field th2 = t < cfg.t_min
                              ? initial_theta(g, traj.gas, traj.wave)
                              : theta2_on_grid(g, t, traj.gas, traj.wave, cfg);
        const double diff = trapz(g, (Theta - th2).square());
        s.t.push_back(t);
        s.diff_sq.push_back(diff);
        s.combined.push_back(diff + traj.records[rec].cum_ln_theta_x_sq);
    }
    return s;
}

} // namespace cwlab
