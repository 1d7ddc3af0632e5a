// Standalone acceptance gate: runs every criterion against the pinned
// configurations and prints one verdict line per criterion. Exit code 0 means
// every gate passed; 1 means at least one failed; 2/3 follow the usual
// config/numerical split.

#include <iostream>
#include <string>
#include <vector>

#include "cwlab/config.hpp"
#include "cwlab/errors.hpp"
#include "cwlab/scenarios.hpp"

int main(int argc, char** argv) {
    try {
        std::vector<std::string> overrides;
        if (argc > 1) overrides.push_back(std::string("out_dir=") + argv[1]);
        const cwlab::ScenarioConfig cfg =
            cwlab::parse_config(cwlab::ScenarioKind::FullAcceptance, "", overrides);
        const cwlab::RunReport rep = cwlab::run_scenario(cfg, &std::cout);
        const bool ok = rep.overall();
        std::cout << "acceptance: " << (ok ? "PASS" : "FAIL") << " (report in " << cfg.out_dir
                  << "/report.txt)\n";
        return ok ? 0 : 1;
    } catch (const cwlab::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const cwlab::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}
