#include "cwlab/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cwlab/errors.hpp"
#include "cwlab/wave.hpp"

namespace cwlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Check criterion_check(int idx, bool pass, double measured, double bound,
                      const std::string& note) {
    Check c;
    char name[24];
    std::snprintf(name, sizeof name, "criterion_%02d", idx);
    c.name = name;
    c.pass = pass;
    c.measured = measured;
    c.bound = bound;
    c.note = note;
    return c;
}

void print_line(std::ostream* os, int idx, bool pass, const std::string& text) {
    if (os == nullptr) return;
    char head[24];
    std::snprintf(head, sizeof head, "criterion %2d: ", idx);
    (*os) << head << (pass ? "PASS" : "FAIL") << " -- " << text << '\n';
    os->flush();
}

// Pass means gated, passing, and backed by actual data (a vacuous sub-check
// proves nothing at acceptance level).
bool solid(const RunReport& rep, const char* name) {
    const Check* c = rep.find(name);
    return c != nullptr && c->pass && !c->vacuous;
}

double measured_of(const RunReport& rep, const char* name) {
    const Check* c = rep.find(name);
    return c != nullptr ? c->measured : kNaN;
}

bool same_bytes(const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct Outcome {
    bool ran = false;
    RunReport rep;
    std::string err;
};

}  // namespace

RunReport run_full_acceptance(const ScenarioConfig& cfg, std::ostream* lines) {
    const std::string root = cfg.out_dir;
    RunReport rep;
    rep.scenario = scenario_name(ScenarioKind::FullAcceptance);

    auto sub_cfg = [&](ScenarioKind kind, const std::string& name,
                       std::vector<std::string> ov) {
        ov.push_back("out_dir=" + root + "/" + name);
        return parse_config(kind, "", ov);
    };
    auto guarded_run = [](const ScenarioConfig& c) {
        Outcome o;
        try {
            o.rep = run_scenario(c);
            o.ran = true;
        } catch (const numerical_error& e) {
            o.err = e.what();
        }
        return o;
    };
    std::vector<std::vector<double>> rows;
    auto record = [&](int idx, bool pass, double measured, double bound,
                      const std::string& note, const std::string& text) {
        rep.checks.push_back(criterion_check(idx, pass, measured, bound, note));
        rows.push_back({double(idx), pass ? 1.0 : 0.0, measured, bound});
        print_line(lines, idx, pass, text);
    };

    // -- criterion 1: linear run against the exact half-line kernel ----------
    {
        Outcome o = guarded_run(sub_cfg(ScenarioKind::OracleCheck, "oracle-check", {}));
        bool pass = false;
        double measured = kNaN;
        std::string note;
        if (o.ran) {
            pass = solid(o.rep, "kernel_match") && o.rep.find("kernel_refine")->pass;
            measured = measured_of(o.rep, "kernel_match");
            note = "rel_linf=" + num(measured) +
                   " (<= 1e-4), refinement shrink=" + num(measured_of(o.rep, "kernel_refine")) +
                   " (>= 3.5)";
        } else {
            note = "numerical abort: " + o.err;
        }
        record(1, pass, measured, 1e-4, note,
               "linear-diffusion run reproduces the exact kernel solution; " + note);
    }

    // -- criteria 2 and 3 share one long wave run ----------------------------
    {
        Outcome wd = guarded_run(sub_cfg(ScenarioKind::WaveDecay, "wave-decay", {}));

        bool p2 = false;
        double m2 = kNaN;
        std::string n2;
        if (wd.ran) {
            p2 = solid(wd.rep, "slope_ln_theta_x") && solid(wd.rep, "slope_ln_theta_xx") &&
                 solid(wd.rep, "slope_ln_theta_xxx");
            const double worst =
                std::max({measured_of(wd.rep, "slope_ln_theta_x") + 0.45,
                          measured_of(wd.rep, "slope_ln_theta_xx") + 1.4,
                          measured_of(wd.rep, "slope_ln_theta_xxx") + 2.3});
            m2 = worst;  // margin above the steepest allowed slope; <= 0 passes
            n2 = "slopes=(" + num(measured_of(wd.rep, "slope_ln_theta_x")) + ", " +
                 num(measured_of(wd.rep, "slope_ln_theta_xx")) + ", " +
                 num(measured_of(wd.rep, "slope_ln_theta_xxx")) +
                 ") vs bounds (-0.45, -1.4, -2.3)";
        } else {
            n2 = "numerical abort: " + wd.err;
        }
        record(2, p2, m2, 0.0, n2, "gradient norms decay at the claimed rates; " + n2);
    }

    // -- criterion 3: growth bounds on a wave sharp enough to reach its
    //    self-similar regime inside the [1, 100] window (the default wave is
    //    still spreading there and its cumulative integrals look linear;
    //    the delta0=0.75 tail relaxes fast enough that only the intrinsic
    //    log(1+t) early-window bias of a cumulative integral remains)
    {
        Outcome wg = guarded_run(sub_cfg(
            ScenarioKind::WaveDecay, "wave-growth",
            {"wave.alpha=8", "wave.delta0=0.75", "grid.length=60", "grid.n=8001", "run.T=100",
             "run.snapshot_count=26", "run.snapshot_spacing=linear"}));
        bool p3 = false;
        double m3 = kNaN;
        std::string n3;
        if (wg.ran) {
            p3 = solid(wg.rep, "growth_cum_grad") && solid(wg.rep, "growth_combined");
            m3 = std::max(measured_of(wg.rep, "growth_cum_grad"),
                          measured_of(wg.rep, "growth_combined"));
            n3 = "growth exponents=(" + num(measured_of(wg.rep, "growth_cum_grad")) + ", " +
                 num(measured_of(wg.rep, "growth_combined")) + ") vs 0.6";
        } else {
            n3 = "numerical abort: " + wg.err;
        }
        record(3, p3, m3, 0.6, n3,
               "cumulative gradient integrals grow slower than t^0.6; " + n3);
    }

    // -- criterion 4: initial-data scaling across the (alpha, delta0) lattice
    {
        const GasParams gas = make_params(1.0, 5.0 / 3.0, 1.0, 1.0, 1.0, 2.0, 2.0);
        const double alphas[] = {0.5, 1.0, 2.0, 4.0};
        const double deltas[] = {0.1, 0.25, 0.5};
        std::vector<double> r_grad, r_w, r_curv;
        double l1_worst = 0.0;
        for (double alpha : alphas) {
            for (double d0 : deltas) {
                const Grid1D g = make_grid(100.0 / alpha, 8001);
                WaveParams w;
                w.alpha = alpha;
                w.delta0 = d0;
                const BoundReport b = verify_initial_bounds(g, gas, w);
                r_grad.push_back(b.ratio_grad_sq);
                r_w.push_back(b.ratio_weighted);
                r_curv.push_back(b.ratio_curv_sq);
                const double jump = std::abs(gas.theta_plus - gas.theta_minus);
                l1_worst = std::max(l1_worst, std::abs(b.grad_l1 - jump));
            }
        }
        auto spread = [](const std::vector<double>& v) {
            const double lo = *std::min_element(v.begin(), v.end());
            const double hi = *std::max_element(v.begin(), v.end());
            return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
        };
        const double s_grad = spread(r_grad), s_w = spread(r_w), s_cv = spread(r_curv);
        const double worst = std::max({s_grad, s_w, s_cv});
        const bool pass = worst < 10.0 && l1_worst <= 1e-8;
        const std::string note = "ratio spreads=(" + num(s_grad) + ", " + num(s_w) + ", " +
                                 num(s_cv) + ") < 10, max |grad L1 - jump|=" + num(l1_worst);
        record(4, pass, worst, 10.0, note,
               "initial-data integrals follow their scaling laws on a 4x3 lattice; " + note);
    }

    // -- criterion 5: inviscid-limit distances along the kappa ladder --------
    {
        Outcome ks = guarded_run(sub_cfg(ScenarioKind::KappaSweep, "kappa-sweep", {}));
        bool pass = false;
        double measured = kNaN;
        std::string note;
        if (ks.ran) {
            pass = solid(ks.rep, "theta_l1_decreasing") && solid(ks.rep, "u_l2_decreasing") &&
                   solid(ks.rep, "v_l2_decreasing");
            measured = std::max({measured_of(ks.rep, "theta_l1_decreasing"),
                                 measured_of(ks.rep, "u_l2_decreasing"),
                                 measured_of(ks.rep, "v_l2_decreasing")});
            note = "worst adjacent ratio=" + num(measured) + " (< 1 means strict decrease)";
        } else {
            note = "numerical abort: " + ks.err;
        }
        record(5, pass, measured, 1.0, note,
               "distances to the inviscid wave shrink as kappa drops (q=2); " + note);

        // informational rerun with the weak coupling exponent
        Outcome ks2 = guarded_run(sub_cfg(ScenarioKind::KappaSweep, "kappa-sweep-q05",
                                          {"wave.coupling_exponent=0.5", "grid.length=12"}));
        Check q05;
        q05.name = "kappa_q05_overall";
        q05.gated = false;
        q05.measured = ks2.ran && ks2.rep.overall() ? 1.0 : 0.0;
        q05.note = ks2.ran ? "informational rerun with q = 1/2 on a short box"
                           : "numerical abort: " + ks2.err;
        rep.checks.push_back(q05);
    }

    // -- criterion 6: boundary specific-volume relaxation --------------------
    {
        Outcome bo = guarded_run(sub_cfg(ScenarioKind::BoundaryOde, "boundary-ode", {}));
        bool pass = false;
        double measured = kNaN;
        std::string note;
        if (bo.ran) {
            const Check* match = bo.rep.find("relax_match");
            const Check* refine = bo.rep.find("relax_refine");
            pass = match->pass && refine->pass;
            measured = match->measured;
            note = "max rel deviation=" + num(measured) + " (<= 0.01), " +
                   (refine->vacuous ? "refined run at round-off floor"
                                    : "refinement shrink=" + num(refine->measured));
        } else {
            note = "numerical abort: " + bo.err;
        }
        record(6, pass, measured, 0.01, note,
               "boundary specific volume relaxes on the exact exponential; " + note);
    }

    // -- criteria 7 and 9 share the perturbed stability run ------------------
    Outcome st = guarded_run(sub_cfg(ScenarioKind::Stability, "stability", {}));
    {
        bool pass = false;
        double measured = kNaN;
        std::string note;
        if (st.ran) {
            pass = solid(st.rep, "sup_decay") && solid(st.rep, "energy_decay") &&
                   solid(st.rep, "positivity");
            const double sup0 = measured_of(st.rep, "sup_initial");
            const double supT = measured_of(st.rep, "sup_final");
            measured = sup0 > 0.0 ? supT / sup0 : kNaN;
            note = "sup ratio=" + num(measured) + ", energy ratio=" +
                   num(measured_of(st.rep, "energy_final") /
                       measured_of(st.rep, "energy_initial")) +
                   " (both <= 0.1), min v=" + num(measured_of(st.rep, "min_v")) +
                   ", min theta=" + num(measured_of(st.rep, "min_theta"));
        } else {
            note = "numerical abort: " + st.err;
        }
        record(7, pass, measured, 0.1, note,
               "perturbed coupled run decays in sup norm and energy, state stays positive; " +
                   note);
    }

    // -- criterion 8: weighted-Poincare ratio along a delta0 ladder ----------
    {
        bool pass = false;
        double measured = kNaN;
        std::string note;
        try {
            std::vector<std::string> ov = {"grid.length=60",
                                           "grid.n=2401",
                                           "run.T=5",
                                           "run.snapshot_count=21",
                                           "run.snapshot_spacing=linear",
                                           "run.cfl=0.25",
                                           "run.monitor_contamination=false",
                                           "perturbation.phi=bump 1.0 6.0 2.0",
                                           "perturbation.psi=",
                                           "perturbation.zeta=bump 1.0 8.0 2.0",
                                           "perturbation.target_l2=0.02",
                                           "out_dir=" + root + "/poincare-sweep"};
            const ScenarioConfig base = parse_config(ScenarioKind::Stability, "", ov);
            const RunReport sw = sweep(base, "wave.delta0", {0.4, 0.2, 0.1});
            const Check* mono = sw.find("poincare_ratio_strictly_decreasing");
            if (mono != nullptr) {
                pass = mono->pass && !mono->vacuous;
                measured = mono->measured;
                note = "worst adjacent ratio=" + num(measured) + " (< 1 means strict decrease)";
            } else {
                note = "sweep produced no monotonicity check";
            }
        } catch (const numerical_error& e) {
            note = std::string("numerical abort: ") + e.what();
        }
        record(8, pass, measured, 1.0, note,
               "weighted-Poincare ratio decreases as delta0 drops; " + note);
    }

    // -- criterion 9: temperature oscillation keeps the full jump ------------
    {
        bool pass = false;
        double measured = kNaN;
        const double bound = 1.0 - 1e-6;  // |theta_plus - theta_minus| = 1 for the pinned run
        std::string note;
        if (st.ran) {
            measured = measured_of(st.rep, "osc_theta_min");
            pass = measured >= bound;
            note = "min oscillation=" + num(measured) + " (>= jump - 1e-6)";
        } else {
            note = "numerical abort: " + st.err;
        }
        record(9, pass, measured, bound, note,
               "temperature oscillation never falls below the far-field jump; " + note);
    }

    // -- criterion 10: byte-identical reruns ----------------------------------
    {
        const std::vector<std::string> ov = {"grid.length=20",
                                             "grid.n=801",
                                             "run.T=0.5",
                                             "run.snapshot_count=6",
                                             "run.snapshot_spacing=linear",
                                             "run.cfl=0.3",
                                             "run.monitor_contamination=false",
                                             "perturbation.phi=random 1.0 10.0 3.0",
                                             "perturbation.psi=random 1.0 9.0 3.0",
                                             "perturbation.zeta=random 1.0 11.0 2.5",
                                             "perturbation.target_l2=0.02"};
        Outcome a = guarded_run(sub_cfg(ScenarioKind::Stability, "det-a", ov));
        Outcome b = guarded_run(sub_cfg(ScenarioKind::Stability, "det-b", ov));
        bool pass = false;
        std::string note;
        if (a.ran && b.ran) {
            pass = same_bytes(root + "/det-a/series.csv", root + "/det-b/series.csv");
            note = pass ? "seeded rerun reproduced series.csv byte for byte"
                        : "series.csv differs between identical runs";
        } else {
            note = "numerical abort: " + (a.ran ? b.err : a.err);
        }
        record(10, pass, pass ? 1.0 : 0.0, 1.0, note,
               "seeded reruns are byte-identical (suite exit code covers the rest); " + note);
    }

    write_series_csv(root + "/series.csv", {"criterion", "pass", "measured", "bound"}, rows);

    // the representative final profile comes from the long stability run
    std::error_code ec;
    const std::string src = root + "/stability/profile_final.csv";
    const std::string dst = root + "/profile_final.csv";
    if (!std::filesystem::copy_file(src, dst, std::filesystem::copy_options::overwrite_existing,
                                    ec)) {
        std::ofstream out(dst);
        out << "x,v,u,theta,V,U,Theta,phi,psi,zeta\n";
    }
    return rep;
}

}  // namespace cwlab
