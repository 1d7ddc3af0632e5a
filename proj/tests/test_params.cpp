#include <doctest.h>

#include <random>

#include "cwlab/params.hpp"

using namespace cwlab;

TEST_CASE("derived parameters: worked example with exact binary values") {
    // gamma = 2 makes every derived quantity exactly representable
    const GasParams p = make_params(1.0, 2.0, 1.0, 1.0, 1.0, 2.0, 2.0);
    CHECK(p.p_plus == 1.0);
    CHECK(p.v_minus == 1.0);
    CHECK(p.a == 0.5);
    CHECK(p.c_v == 1.0);
}

TEST_CASE("derived parameters: default gas") {
    const GasParams p = make_params(1.0, 5.0 / 3.0, 1.0, 1.0, 1.0, 2.0, 2.0);
    CHECK(p.p_plus == 1.0);
    CHECK(p.v_minus == 1.0);
    CHECK(p.a == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(p.c_v == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("pressure matching holds across random parameter draws") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(0.2, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const GasParams p =
            make_params(u(rng), 1.0 + u(rng), u(rng), u(rng), u(rng), u(rng), u(rng));
        // both end states sit on the same isobar
        CHECK(p.R * p.theta_plus / p.v_plus == doctest::Approx(p.p_plus).epsilon(1e-14));
        CHECK(p.R * p.theta_minus / p.v_minus == doctest::Approx(p.p_plus).epsilon(1e-14));
        // diffusivity of the profile equation
        const double a_ref = p.kappa * p.p_plus * (p.gamma - 1.0) / (p.gamma * p.R * p.R);
        CHECK(p.a == doctest::Approx(a_ref).epsilon(1e-14));
        CHECK(p.c_v * (p.gamma - 1.0) == doctest::Approx(p.R).epsilon(1e-14));
    }
}

TEST_CASE("parameter validation rejects non-physical values") {
    CHECK_THROWS_AS(make_params(-1.0, 2.0, 1.0, 1.0, 1.0, 2.0, 2.0), config_error);
    CHECK_THROWS_AS(make_params(1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0), config_error);
    CHECK_THROWS_AS(make_params(1.0, 2.0, 0.0, 1.0, 1.0, 2.0, 2.0), config_error);
    CHECK_THROWS_AS(make_params(1.0, 2.0, 1.0, -0.5, 1.0, 2.0, 2.0), config_error);
    CHECK_THROWS_AS(make_params(1.0, 2.0, 1.0, 1.0, 0.0, 2.0, 2.0), config_error);
    CHECK_THROWS_AS(make_params(1.0, 2.0, 1.0, 1.0, 1.0, -2.0, 2.0), config_error);
    CHECK_THROWS_AS(make_params(1.0, 2.0, 1.0, 1.0, 1.0, 2.0, 0.0), config_error);
}

TEST_CASE("wave parameter validation") {
    WaveParams w;
    w.alpha = 1.0;
    w.delta0 = 0.5;
    CHECK_NOTHROW(validate(w));
    w.alpha = 0.0;
    CHECK_THROWS_AS(validate(w), config_error);
    w.alpha = 1.0;
    w.delta0 = 1.0;  // tail exponent must stay strictly below 1
    CHECK_THROWS_AS(validate(w), config_error);
    w.delta0 = 0.0;
    CHECK_THROWS_AS(validate(w), config_error);
}
