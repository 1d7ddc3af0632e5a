#include <doctest.h>

#include <cmath>

#include "cwlab/kernel.hpp"

using namespace cwlab;

namespace {

GasParams default_gas() { return make_params(1.0, 5.0 / 3.0, 1.0, 1.0, 1.0, 2.0, 2.0); }

WaveParams default_wave() {
    WaveParams w;
    w.alpha = 1.0;
    w.delta0 = 0.25;
    return w;
}

} // namespace

// ---------------------------------------------------------------------------
// quadrature rule
// ---------------------------------------------------------------------------

TEST_CASE("Gauss-Legendre nodes match the classical low orders") {
    const auto& [x2, w2] = gauss_legendre(2);
    CHECK(x2[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(w2[0] == doctest::Approx(1.0).epsilon(1e-14));

    const auto& [x3, w3] = gauss_legendre(3);
    CHECK(x3[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(x3[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-14));
    CHECK(w3[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    CHECK(w3[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {3, 8, 16, 64}) {
        CAPTURE(n);
        const auto& [x, w] = gauss_legendre(n);
        double mass = 0.0, quartic = 0.0;
        for (int i = 0; i < n; ++i) {
            mass += w[i];
            quartic += w[i] * std::pow(x[i], 4);
        }
        CHECK(mass == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(quartic == doctest::Approx(0.4).epsilon(1e-13));
    }
    CHECK_THROWS_AS(gauss_legendre(1), config_error);
    CHECK_THROWS_AS(gauss_legendre(200), config_error);
}

// ---------------------------------------------------------------------------
// half-line heat solution: oracle is the exact evolution of a Gaussian bump,
// whose odd extension evolves in closed form
// ---------------------------------------------------------------------------

TEST_CASE("kernel integral reproduces the exact Gaussian image-pair solution") {
    // initial data = Gaussian bump minus its mirror image, so its odd
    // extension is exactly a difference of two full-line Gaussians and the
    // half-line solution is known in closed form for all t
    const double a = 0.4, theta_minus = 1.0;
    const double A = 0.6, h0 = 3.0, s0 = 0.5;
    const auto pair = [&](double x, double s) {
        return std::exp(-(x - h0) * (x - h0) / (4.0 * s)) -
               std::exp(-(x + h0) * (x + h0) / (4.0 * s));
    };
    const auto bump = [&](double h) { return theta_minus + A * pair(h, s0); };
    const auto exact = [&](double x, double t) {
        const double s = s0 + a * t;
        return theta_minus + A * std::sqrt(s0 / s) * pair(x, s);
    };

    for (double t : {0.05, 0.5, 2.0}) {
        for (double x : {0.3, 1.0, 3.0, 7.0}) {
            CAPTURE(t);
            CAPTURE(x);
            const double got = theta2_point(x, t, bump, a, theta_minus, 12.0);
            CHECK(std::abs(got - exact(x, t)) < 1e-9);
        }
    }
}

TEST_CASE("kernel solution: boundary value, small-time fallback, max principle") {
    const GasParams gas = default_gas();
    const WaveParams w = default_wave();

    // antisymmetry pins the boundary exactly
    CHECK(theta2_exact(0.0, 5.0, gas, w) == gas.theta_minus);

    // below the time cutoff the initial profile is returned verbatim
    CHECK(theta2_exact(2.0, 1e-9, gas, w) == initial_theta_at(2.0, gas, w));
    // just above it the solution has barely moved
    CHECK(std::abs(theta2_exact(2.0, 2e-8, gas, w) - initial_theta_at(2.0, gas, w)) < 1e-6);

    for (double x : {0.5, 2.0, 10.0, 40.0}) {
        const double val = theta2_exact(x, 1.5, gas, w);
        CHECK(val >= gas.theta_minus - 1e-9);
        CHECK(val <= gas.theta_plus + 1e-9);
    }

    CHECK_THROWS_AS(theta2_exact(-1.0, 1.0, gas, w), config_error);
}

TEST_CASE("kernel quadrature is invariant under panel and order refinement") {
    const GasParams gas = default_gas();
    const WaveParams w = default_wave();
    KernelConfig fine;
    fine.nodes_per_panel = 24;
    fine.panel_scale = 2.0;

    for (double t : {0.01, 1.0, 25.0}) {
        for (double x : {0.25, 3.0, 15.0}) {
            CAPTURE(t);
            CAPTURE(x);
            const double base = theta2_exact(x, t, gas, w);
            const double refined = theta2_exact(x, t, gas, w, fine);
            CHECK(std::abs(base - refined) < 1e-10);
        }
    }
}

// ---------------------------------------------------------------------------
// PDE residual of the sampled solution
// ---------------------------------------------------------------------------

TEST_CASE("sampled kernel solution satisfies the heat equation to second order") {
    const GasParams gas = default_gas();
    const WaveParams w = default_wave();

    const double coarse =
        theta2_residual(make_grid(30.0, 601), 1.0, 0.02, gas, w);
    const double fine =
        theta2_residual(make_grid(30.0, 1201), 1.0, 0.01, gas, w);
    CHECK(coarse < 1e-3);
    CHECK(coarse / fine > 2.8);  // halving dx and dt must cut the residual ~4x

    CHECK_THROWS_AS(theta2_residual(make_grid(30.0, 601), 1e-9, 0.02, gas, w), config_error);
}

// ---------------------------------------------------------------------------
// scalar series
// ---------------------------------------------------------------------------

TEST_CASE("gradient-mass series of the kernel solution decays; cumulative grows") {
    const GasParams gas = default_gas();
    const WaveParams w = default_wave();
    const Grid1D g = make_grid(40.0, 801);
    const KernelSeries s = check_bound_2_2(g, {0.0, 0.5, 1.0, 2.0, 4.0}, gas, w);

    REQUIRE(s.t.size() == 5);
    CHECK(s.cumulative.front() == 0.0);
    for (std::size_t i = 1; i < s.t.size(); ++i) {
        CHECK(s.cumulative[i] >= s.cumulative[i - 1]);
        CHECK(s.grad_sq[i] < s.grad_sq[i - 1]);
    }

    // the t = 0 entry must be the initial profile's own gradient mass
    const Field d0 = derivative(g, initial_theta(g, gas, w), 1);
    CHECK(s.grad_sq[0] == doctest::Approx(trapz(g, d0.square())).epsilon(1e-14));

    CHECK_THROWS_AS(check_bound_2_2(g, {1.0, 0.5}, gas, w), config_error);
}

TEST_CASE("profile/kernel comparison starts at zero and stays finite") {
    const GasParams gas = default_gas();
    WaveParams w;
    w.alpha = 1.0;
    w.delta0 = 0.5;
    const Grid1D g = make_grid(30.0, 301);
    const WaveTrajectory traj = run_wave(g, gas, w, 1.0, {0.0, 0.5, 1.0});
    const CompareSeries s = compare_theta_theta2(traj);

    REQUIRE(s.t.size() == 3);
    CHECK(s.diff_sq[0] == 0.0);   // identical initial data
    CHECK(s.combined[0] == 0.0);
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        CHECK(std::isfinite(s.diff_sq[i]));
        CHECK(s.combined[i] >= s.diff_sq[i]);
    }
    // the nonlinear and linear evolutions separate slowly at early times
    CHECK(s.diff_sq[1] < 0.05);
}
