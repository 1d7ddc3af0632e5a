#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <unistd.h>
#include <vector>

#include "cwlab/config.hpp"
#include "cwlab/errors.hpp"

using namespace cwlab;

namespace {

/// Writes `text` to a fresh file under the system temp directory and returns
/// the path; each call gets a unique name so tests cannot collide.
std::string temp_config(const std::string& text) {
    static int counter = 0;
    const std::string path =
        (std::filesystem::temp_directory_path() /
         ("cwlab_cfg_" + std::to_string(++counter) + "_" + std::to_string(::getpid()) + ".ini"))
            .string();
    std::ofstream out(path);
    out << text;
    return path;
}

bool error_mentions(const std::function<void()>& f, const std::string& needle) {
    try {
        f();
    } catch (const config_error& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("defaults resolve without a file") {
    const ScenarioConfig cfg = parse_config(ScenarioKind::Stability, "", {});
    CHECK(cfg.kind == ScenarioKind::Stability);
    CHECK(cfg.gas.R == 1.0);
    CHECK(cfg.gas.gamma == doctest::Approx(5.0 / 3.0));
    CHECK(cfg.gas.p_plus == doctest::Approx(1.0));
    CHECK(cfg.grid_length == 250.0);
    CHECK(cfg.grid_n == 8001);
    CHECK(cfg.horizon == 100.0);
    CHECK(cfg.ctl.cfl_factor == doctest::Approx(0.25));
    CHECK(cfg.ctl.contamination_eps == doctest::Approx(1e-5));
    CHECK(cfg.pert.phi.size() == 1);
    CHECK(cfg.pert.phi[0].shape == Shape::DerivativeHeavy);
    CHECK(cfg.pert.target_l2 == doctest::Approx(0.02));
    CHECK(cfg.out_dir == "out/stability");
    REQUIRE(cfg.snapshot_times.size() >= 2);
    CHECK(cfg.snapshot_times.front() == 0.0);
    CHECK(cfg.snapshot_times.back() == doctest::Approx(100.0));
    for (size_t i = 1; i < cfg.snapshot_times.size(); ++i)
        CHECK(cfg.snapshot_times[i] > cfg.snapshot_times[i - 1]);
}

TEST_CASE("file values land in the right fields") {
    const std::string path = temp_config(
        "# comment line\n"
        "scenario = boundary-ode\n"
        "[gas]\n"
        "mu = 2.5\n"
        "theta_plus = 1.0   # inline comment\n"
        "[grid]\n"
        "length = 2.0\n"
        "n = 201\n"
        "[run]\n"
        "T = 3.0\n"
        "cfl = 0.4\n"
        "[perturbation]\n"
        "phi0_boundary = 0.01\n");
    const ScenarioConfig cfg = parse_config(ScenarioKind::BoundaryOde, path, {});
    CHECK(cfg.gas.mu == 2.5);
    CHECK(cfg.gas.theta_plus == 1.0);
    CHECK(cfg.grid_length == 2.0);
    CHECK(cfg.grid_n == 201);
    CHECK(cfg.horizon == 3.0);
    CHECK(cfg.ctl.cfl_factor == doctest::Approx(0.4));
    CHECK(cfg.pert.phi0_boundary == doctest::Approx(0.01));
    std::filesystem::remove(path);
}

TEST_CASE("dotted keys work without section headers") {
    const std::string path = temp_config("gas.kappa = 0.5\nrun.T = 0.25\n");
    const ScenarioConfig cfg = parse_config(ScenarioKind::WaveDecay, path, {});
    CHECK(cfg.gas.kappa == 0.5);
    CHECK(cfg.horizon == 0.25);
    std::filesystem::remove(path);
}

TEST_CASE("missing file is a config error") {
    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, "/nonexistent/cfg.ini", {}),
                    config_error);
}

TEST_CASE("unknown keys are rejected with their line number") {
    const std::string path = temp_config("[gas]\nmu = 1.0\nviscosity = 2.0\n");
    CHECK(error_mentions([&] { parse_config(ScenarioKind::Stability, path, {}); },
                         "config line 3"));
    std::filesystem::remove(path);
}

TEST_CASE("unknown sections are rejected") {
    const std::string path = temp_config("[engine]\npower = 1\n");
    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, path, {}), config_error);
    std::filesystem::remove(path);
}

TEST_CASE("duplicate keys are rejected naming the first definition") {
    const std::string path = temp_config("[gas]\nmu = 1.0\nmu = 2.0\n");
    CHECK(error_mentions([&] { parse_config(ScenarioKind::Stability, path, {}); }, "line 2"));
    std::filesystem::remove(path);
}

TEST_CASE("scenario key must match the requested scenario") {
    const std::string path = temp_config("scenario = stability\n");
    CHECK_THROWS_AS(parse_config(ScenarioKind::WaveDecay, path, {}), config_error);
    const std::string ok = temp_config("scenario = wave-decay\n");
    CHECK_NOTHROW(parse_config(ScenarioKind::WaveDecay, ok, {}));
    std::filesystem::remove(path);
    std::filesystem::remove(ok);
}

TEST_CASE("malformed numbers carry line context") {
    const std::string path = temp_config("[gas]\nR = not_a_number\n");
    CHECK(error_mentions([&] { parse_config(ScenarioKind::Stability, path, {}); },
                         "config line 2"));
    std::filesystem::remove(path);
}

TEST_CASE("range violations are config errors") {
    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, "", {"gas.gamma=0.9"}), config_error);
    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, "", {"gas.mu=-1"}), config_error);
    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, "", {"wave.delta0=1.0"}), config_error);
    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, "", {"run.cfl=0.6"}), config_error);
    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, "", {"grid.n=3"}), config_error);
    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, "", {"run.T=0"}), config_error);
}

TEST_CASE("overrides win over file values and defaults") {
    const std::string path = temp_config("[gas]\nmu = 2.0\n");
    const ScenarioConfig cfg =
        parse_config(ScenarioKind::Stability, path, {"gas.mu=3.0", "run.T=7"});
    CHECK(cfg.gas.mu == 3.0);
    CHECK(cfg.horizon == 7.0);
    std::filesystem::remove(path);
}

TEST_CASE("bad overrides are rejected as overrides") {
    CHECK(error_mentions([&] { parse_config(ScenarioKind::Stability, "", {"gas.nope=1"}); },
                         "override"));
    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, "", {"no_equals_sign"}), config_error);
}

TEST_CASE("perturbation components parse shape amp center width [wavenumber]") {
    const ScenarioConfig cfg = parse_config(
        ScenarioKind::Stability, "",
        {"perturbation.phi=gaussian 0.1 5 1; deriv 0.2 6 2 12", "perturbation.psi=",
         "perturbation.zeta=bump 0.3 7 1.5"});
    REQUIRE(cfg.pert.phi.size() == 2);
    CHECK(cfg.pert.phi[0].shape == Shape::Gaussian);
    CHECK(cfg.pert.phi[0].amplitude == 0.1);
    CHECK(cfg.pert.phi[1].shape == Shape::DerivativeHeavy);
    CHECK(cfg.pert.phi[1].wavenumber == 12.0);
    CHECK(cfg.pert.psi.empty());
    REQUIRE(cfg.pert.zeta.size() == 1);
    CHECK(cfg.pert.zeta[0].width == 1.5);

    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, "", {"perturbation.phi=gaussian 0.1"}),
                    config_error);
    CHECK_THROWS_AS(
        parse_config(ScenarioKind::Stability, "", {"perturbation.phi=vortex 0.1 5 1"}),
        config_error);
}

TEST_CASE("kappa ladders parse as comma or space separated lists") {
    const ScenarioConfig cfg =
        parse_config(ScenarioKind::KappaSweep, "", {"sweep.kappa_values=0.2, 0.1 0.05"});
    REQUIRE(cfg.kappa_values.size() == 3);
    CHECK(cfg.kappa_values[0] == 0.2);
    CHECK(cfg.kappa_values[2] == 0.05);
    CHECK_THROWS_AS(parse_config(ScenarioKind::KappaSweep, "", {"sweep.kappa_values=0.1 -0.05"}),
                    config_error);
}

TEST_CASE("explicit snapshot lists are sorted and closed at both ends") {
    const ScenarioConfig cfg = parse_config(ScenarioKind::Stability, "",
                                            {"run.T=2", "run.snapshot_times=1.5, 0.5"});
    REQUIRE(cfg.snapshot_times.size() == 4);
    CHECK(cfg.snapshot_times[0] == 0.0);
    CHECK(cfg.snapshot_times[1] == 0.5);
    CHECK(cfg.snapshot_times[2] == 1.5);
    CHECK(cfg.snapshot_times[3] == 2.0);
    CHECK_THROWS_AS(
        parse_config(ScenarioKind::Stability, "", {"run.T=2", "run.snapshot_times=3.0"}),
        config_error);
}

TEST_CASE("generated snapshot schedules span [0, T]") {
    const ScenarioConfig lin = parse_config(
        ScenarioKind::Stability, "",
        {"run.T=1", "run.snapshot_count=5", "run.snapshot_spacing=linear"});
    REQUIRE(lin.snapshot_times.size() == 5);
    CHECK(lin.snapshot_times[1] == doctest::Approx(0.25));

    const ScenarioConfig lg = parse_config(
        ScenarioKind::Stability, "", {"run.T=10", "run.snapshot_count=6", "run.snapshot_spacing=log"});
    REQUIRE(lg.snapshot_times.size() == 6);
    CHECK(lg.snapshot_times.front() == 0.0);
    CHECK(lg.snapshot_times.back() == doctest::Approx(10.0));
    CHECK(lg.snapshot_times[1] == doctest::Approx(0.1));
    CHECK_THROWS_AS(parse_config(ScenarioKind::Stability, "",
                                 {"run.snapshot_spacing=cubic"}),
                    config_error);
}

TEST_CASE("boolean and seed handling") {
    const ScenarioConfig cfg = parse_config(
        ScenarioKind::Stability, "", {"run.monitor_contamination=no", "run.seed=42"});
    CHECK_FALSE(cfg.ctl.monitor_contamination);
    CHECK(cfg.seed == 42);
    CHECK(cfg.pert.seed == 42);
    CHECK_THROWS_AS(
        parse_config(ScenarioKind::Stability, "", {"run.monitor_contamination=maybe"}),
        config_error);
}

TEST_CASE("resolved echo keeps every effective setting") {
    const ScenarioConfig cfg = parse_config(ScenarioKind::Stability, "", {"gas.mu=4"});
    REQUIRE(cfg.resolved.count("gas.mu") == 1);
    CHECK(cfg.resolved.at("gas.mu") == "4");
    CHECK(cfg.resolved.count("grid.n") == 1);
    CHECK(cfg.resolved.count("scenario") == 1);
}

TEST_CASE("scenario names round-trip") {
    for (ScenarioKind k :
         {ScenarioKind::WaveDecay, ScenarioKind::OracleCheck, ScenarioKind::KappaSweep,
          ScenarioKind::Stability, ScenarioKind::BoundaryOde, ScenarioKind::FullAcceptance})
        CHECK(scenario_from_name(scenario_name(k)) == k);
    CHECK_THROWS_AS(scenario_from_name("warp-drive"), config_error);
}
