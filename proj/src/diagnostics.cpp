#include "cwlab/diagnostics.hpp"

#include <cmath>

namespace cwlab {

PerturbationFields perturbation(const GasState& s, const WaveProfile& p) {
    if (std::abs(s.t - p.t) > 1e-9 * std::max(1.0, std::abs(s.t)))
        throw config_error("perturbation: state and profile carry different times");
    if (s.v.size() != p.V.size())
        throw config_error("perturbation: state and profile grids differ");
    return {s.v - p.V, s.u - p.U, s.theta - p.Theta};
}

double phi_func(double z) {
    if (!(z > 0.0)) throw numerical_error("phi_func: argument must be positive");
    return z - std::log(z) - 1.0;
}

double psi_func(double z) {
    if (!(z > 0.0)) throw numerical_error("psi_func: argument must be positive");
    return 1.0 / z + std::log(z) - 1.0;
}

double energy_functional(const Grid1D& g, const GasState& s, const WaveProfile& p,
                         const GasParams& gas) {
    if (!(s.v.minCoeff() > 0.0) || !(s.theta.minCoeff() > 0.0) ||
        !(p.V.minCoeff() > 0.0) || !(p.Theta.minCoeff() > 0.0))
        throw numerical_error("energy_functional: non-positive volume or temperature");
    const Field rv = s.v / p.V;
    const Field rt = s.theta / p.Theta;
    const Field density = 0.5 * (s.u - p.U).square() +
                          gas.R * p.Theta * (rv - rv.log() - 1.0) +
                          gas.c_v * p.Theta * (rt - rt.log() - 1.0);
    return trapz(g, density);
}

Oscillation oscillation(const GasState& s) {
    if (!(s.v.minCoeff() > 0.0))
        throw numerical_error("oscillation: non-positive specific volume");
    Oscillation o;
    o.theta = s.theta.maxCoeff() - s.theta.minCoeff();
    const Field rho = 1.0 / s.v;
    o.rho = rho.maxCoeff() - rho.minCoeff();
    return o;
}

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& q,
                   double t_lo, double t_hi) {
    if (t.size() != q.size()) throw config_error("fit_decay: series lengths differ");
    if (!(t_lo < t_hi)) throw config_error("fit_decay: empty window");

    DecayFit fit;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(q[i] > 0.0)) continue;  // log undefined; sample dropped
        xs.push_back(std::log1p(t[i]));
        ys.push_back(std::log(q[i]));
    }
    fit.points = static_cast<int>(xs.size());
    if (fit.points < 10) {
        fit.vacuous = true;
        return fit;
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double n = static_cast<double>(xs.size());
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) {
        fit.vacuous = true;
        return fit;
    }
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;

    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        rss += r * r;
    }
    fit.rms_residual = std::sqrt(rss / n);
    return fit;
}

PoincareIncrement poincare_increment(const Grid1D& g, const WaveProfile& p,
                                     const PerturbationFields& f) {
    PoincareIncrement inc;
    inc.lhs = trapz(g, p.Theta_x.square() * (f.phi.square() + f.zeta.square()));
    inc.rhs = trapz(g, derivative(g, f.phi, 1).square()) +
              trapz(g, derivative(g, f.zeta, 1).square());
    return inc;
}

InterpolationRatios interpolation_ratios(const Grid1D& g, const WaveProfile& p) {
    InterpolationRatios r;
    const double n1 = norm_l2(g, p.ln_theta_x);
    const double n2 = norm_l2(g, p.ln_theta_xx);
    const double n3 = norm_l2(g, p.ln_theta_xxx);
    const double floor = 1e-300;
    r.theta_x = p.Theta_x.abs().maxCoeff() * p.Theta_x.abs().maxCoeff() /
                std::max(n1 * n2, floor);
    r.u_x = p.U_x.abs().maxCoeff() * p.U_x.abs().maxCoeff() / std::max(n2 * n3, floor);
    return r;
}

} // namespace cwlab
