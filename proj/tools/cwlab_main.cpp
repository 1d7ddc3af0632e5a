// Command-line driver: one subcommand per scenario plus a generic sweep.
// Exit codes: 0 all gated checks pass, 1 a check failed, 2 bad configuration,
// 3 the integrator aborted (NaN, positivity loss, contamination).

#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cwlab/acceptance.hpp"
#include "cwlab/config.hpp"
#include "cwlab/errors.hpp"
#include "cwlab/scenarios.hpp"

namespace {

struct SubArgs {
    cwlab::ScenarioKind kind = cwlab::ScenarioKind::Stability;
    std::string config_path;
    std::vector<std::string> sets;
    std::vector<std::string> flagged;
    bool is_sweep = false;
    std::string axis;
    std::vector<double> values;
};

const char* describe(cwlab::ScenarioKind kind) {
    using K = cwlab::ScenarioKind;
    switch (kind) {
        case K::WaveDecay: return "long run of the wave profile with decay and growth monitors";
        case K::OracleCheck: return "linear diffusion against the exact half-line kernel";
        case K::KappaSweep: return "distance to the inviscid wave along a conductivity ladder";
        case K::Stability: return "perturbed coupled run with decay, energy and positivity gates";
        case K::BoundaryOde: return "boundary specific-volume relaxation against the exact law";
        case K::FullAcceptance: return "every acceptance criterion in one run";
    }
    return "";
}

void add_config_options(CLI::App* sc, const std::shared_ptr<SubArgs>& sa) {
    sc->add_option("--config", sa->config_path, "configuration file (INI style)");
    sc->add_option("--set", sa->sets, "override as key=value, repeatable");
    for (const std::string& key : cwlab::schema_keys()) {
        if (key == "scenario") continue;
        sc->add_option_function<std::string>(
            "--" + key,
            [sa, key](const std::string& v) { sa->flagged.push_back(key + "=" + v); },
            "override for " + key);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a viscous contact wave on the half line"};
    app.require_subcommand(1);

    std::shared_ptr<SubArgs> selected;
    std::vector<std::shared_ptr<SubArgs>> all;

    using K = cwlab::ScenarioKind;
    for (K kind : {K::WaveDecay, K::OracleCheck, K::KappaSweep, K::Stability, K::BoundaryOde,
                   K::FullAcceptance}) {
        auto sa = std::make_shared<SubArgs>();
        sa->kind = kind;
        CLI::App* sc = app.add_subcommand(cwlab::scenario_name(kind), describe(kind));
        add_config_options(sc, sa);
        sc->callback([sa, &selected] { selected = sa; });
        all.push_back(sa);
    }
    {
        auto sa = std::make_shared<SubArgs>();
        sa->is_sweep = true;
        CLI::App* sc = app.add_subcommand("sweep", "rerun one scenario along one config axis");
        std::shared_ptr<std::string> base = std::make_shared<std::string>("stability");
        sc->add_option("--scenario", *base, "base scenario for every run")
            ->check(CLI::IsMember({"wave-decay", "oracle-check", "kappa-sweep", "stability",
                                   "boundary-ode"}));
        sc->add_option("--axis", sa->axis, "config key to vary")->required();
        sc->add_option("--values", sa->values, "axis values, one run each")
            ->required()
            ->expected(1, -1);
        add_config_options(sc, sa);
        sc->callback([sa, base, &selected] {
            sa->kind = cwlab::scenario_from_name(*base);
            selected = sa;
        });
        all.push_back(sa);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::vector<std::string> overrides = selected->flagged;
        overrides.insert(overrides.end(), selected->sets.begin(), selected->sets.end());
        const cwlab::ScenarioConfig cfg =
            cwlab::parse_config(selected->kind, selected->config_path, overrides);

        cwlab::RunReport rep;
        if (selected->is_sweep) {
            rep = cwlab::sweep(cfg, selected->axis, selected->values);
        } else {
            std::ostream* lines =
                selected->kind == K::FullAcceptance ? &std::cout : nullptr;
            rep = cwlab::run_scenario(cfg, lines);
        }

        const bool ok = rep.overall();
        for (const cwlab::Check& c : rep.checks) {
            if (c.gated && !c.pass && !c.vacuous)
                std::cout << "failed check: " << c.name << " (measured=" << c.measured
                          << ", bound=" << c.bound << ")\n";
        }
        std::cout << rep.scenario << ": " << (ok ? "PASS" : "FAIL") << " (report in "
                  << cfg.out_dir << "/report.txt)\n";
        return ok ? 0 : 1;
    } catch (const cwlab::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const cwlab::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}
