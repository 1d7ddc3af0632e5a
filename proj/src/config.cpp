#include "cwlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "cwlab/errors.hpp"

namespace cwlab {
namespace {

// ---------------------------------------------------------------------------
// schema
// ---------------------------------------------------------------------------

enum class ValKind { Dbl, Int, Bool, U64, Str, DblList, Spacing, Components };

struct SchemaEntry {
    const char* key;
    ValKind kind;
};

// every key a config file or override may set; anything else is rejected
constexpr SchemaEntry kSchema[] = {
    {"scenario", ValKind::Str},
    {"out_dir", ValKind::Str},
    {"gas.R", ValKind::Dbl},
    {"gas.gamma", ValKind::Dbl},
    {"gas.mu", ValKind::Dbl},
    {"gas.kappa", ValKind::Dbl},
    {"gas.theta_minus", ValKind::Dbl},
    {"gas.theta_plus", ValKind::Dbl},
    {"gas.v_plus", ValKind::Dbl},
    {"wave.alpha", ValKind::Dbl},
    {"wave.delta0", ValKind::Dbl},
    {"wave.coupling_exponent", ValKind::Dbl},
    {"grid.length", ValKind::Dbl},
    {"grid.n", ValKind::Int},
    {"run.T", ValKind::Dbl},
    {"run.snapshot_count", ValKind::Int},
    {"run.snapshot_spacing", ValKind::Spacing},
    {"run.snapshot_times", ValKind::DblList},
    {"run.cfl", ValKind::Dbl},
    {"run.dt_max", ValKind::Dbl},
    {"run.dt0", ValKind::Dbl},
    {"run.contamination_eps", ValKind::Dbl},
    {"run.monitor_contamination", ValKind::Bool},
    {"run.seed", ValKind::U64},
    {"run.decay_fit_lo", ValKind::Dbl},
    {"run.decay_fit_hi", ValKind::Dbl},
    {"run.growth_fit_lo", ValKind::Dbl},
    {"run.growth_fit_hi", ValKind::Dbl},
    {"perturbation.phi", ValKind::Components},
    {"perturbation.psi", ValKind::Components},
    {"perturbation.zeta", ValKind::Components},
    {"perturbation.phi0_boundary", ValKind::Dbl},
    {"perturbation.phi0_boundary_width", ValKind::Dbl},
    {"perturbation.target_l2", ValKind::Dbl},
    {"sweep.kappa_values", ValKind::DblList},
};

const SchemaEntry* find_schema(const std::string& key) {
    for (const auto& e : kSchema)
        if (key == e.key) return &e;
    return nullptr;
}

constexpr const char* kSections[] = {"gas", "wave", "grid", "run", "perturbation", "sweep"};

// ---------------------------------------------------------------------------
// raw key-value layer
// ---------------------------------------------------------------------------

struct RawEntry {
    std::string value;
    int line = 0; // 0 default, >0 config file line, -1 command-line override
};

using RawMap = std::map<std::string, RawEntry>;

std::string where(const RawEntry& e) {
    if (e.line > 0) return "config line " + std::to_string(e.line);
    if (e.line < 0) return "override";
    return "default";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void merge_file(RawMap& map, const std::string& path, ScenarioKind kind) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string at = "config line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error(at + ": unterminated section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (std::find_if(std::begin(kSections), std::end(kSections),
                             [&](const char* s) { return section == s; }) ==
                std::end(kSections))
                throw config_error(at + ": unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(at + ": expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error(at + ": empty key");
        if (key.find('.') == std::string::npos && !section.empty())
            key = section + "." + key;
        const SchemaEntry* entry = find_schema(key);
        if (entry == nullptr)
            throw config_error(at + ": unknown key '" + key + "'");
        if (key == "scenario" && value != scenario_name(kind))
            throw config_error(at + ": scenario '" + value + "' does not match subcommand '" +
                               scenario_name(kind) + "'");
        auto it = map.find(key);
        if (it != map.end() && it->second.line > 0)
            throw config_error(at + ": duplicate key '" + key + "' (first at line " +
                               std::to_string(it->second.line) + ")");
        map[key] = {value, lineno};
    }
}

void merge_overrides(RawMap& map, const std::vector<std::string>& overrides,
                     ScenarioKind kind) {
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw config_error("override '" + ov + "': expected key=value");
        const std::string key = trim(ov.substr(0, eq));
        const std::string value = trim(ov.substr(eq + 1));
        if (find_schema(key) == nullptr)
            throw config_error("override: unknown key '" + key + "'");
        if (key == "scenario" && value != scenario_name(kind))
            throw config_error("override: scenario '" + value + "' does not match subcommand '" +
                               scenario_name(kind) + "'");
        map[key] = {value, -1};
    }
}

// ---------------------------------------------------------------------------
// typed extraction
// ---------------------------------------------------------------------------

double parse_dbl(const RawMap& m, const std::string& key, const RawEntry& e) {
    if (e.value == "inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(e.value, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != e.value.size())
        throw config_error(where(e) + ": " + key + " wants a number, got '" + e.value + "'");
    (void)m;
    return out;
}

long parse_int(const std::string& key, const RawEntry& e) {
    std::size_t used = 0;
    long out = 0;
    try {
        out = std::stol(e.value, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != e.value.size())
        throw config_error(where(e) + ": " + key + " wants an integer, got '" + e.value + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& key, const RawEntry& e) {
    std::size_t used = 0;
    std::uint64_t out = 0;
    try {
        out = std::stoull(e.value, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != e.value.size())
        throw config_error(where(e) + ": " + key + " wants a nonnegative integer, got '" +
                           e.value + "'");
    return out;
}

bool parse_bool(const std::string& key, const RawEntry& e) {
    if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no") return false;
    throw config_error(where(e) + ": " + key + " wants true/false, got '" + e.value + "'");
}

std::vector<double> parse_list(const std::string& key, const RawEntry& e) {
    std::string s = e.value;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        RawEntry item{tok, e.line};
        out.push_back(parse_dbl({}, key, item));
    }
    if (out.empty())
        throw config_error(where(e) + ": " + key + " wants a list of numbers");
    return out;
}

Shape parse_shape(const std::string& key, const RawEntry& e, const std::string& name) {
    if (name == "gaussian") return Shape::Gaussian;
    if (name == "bump") return Shape::CompactBump;
    if (name == "deriv") return Shape::DerivativeHeavy;
    if (name == "random") return Shape::RandomBumps;
    throw config_error(where(e) + ": " + key + ": unknown shape '" + name +
                       "' (gaussian, bump, deriv, random)");
}

// "shape amp center width [wavenumber]" entries separated by ';'
std::vector<PerturbationComponent> parse_components(const std::string& key,
                                                    const RawEntry& e) {
    std::vector<PerturbationComponent> out;
    std::istringstream groups(e.value);
    std::string group;
    while (std::getline(groups, group, ';')) {
        group = trim(group);
        if (group.empty()) continue;
        std::istringstream in(group);
        std::string shape;
        in >> shape;
        std::vector<double> nums;
        std::string tok;
        while (in >> tok) nums.push_back(parse_dbl({}, key, {tok, e.line}));
        if (nums.size() != 3 && nums.size() != 4)
            throw config_error(where(e) + ": " + key +
                               ": component wants 'shape amplitude center width [wavenumber]', got '" +
                               group + "'");
        PerturbationComponent c;
        c.shape = parse_shape(key, e, shape);
        c.amplitude = nums[0];
        c.center = nums[1];
        c.width = nums[2];
        c.wavenumber = nums.size() == 4 ? nums[3] : 0.0;
        out.push_back(c);
    }
    return out;
}

const RawEntry* find(const RawMap& m, const std::string& key) {
    const auto it = m.find(key);
    return it == m.end() ? nullptr : &it->second;
}

void require(bool ok, const RawMap& m, const std::string& key, const std::string& what) {
    if (ok) return;
    const RawEntry* e = find(m, key);
    const std::string at = e != nullptr ? where(*e) : std::string("default");
    throw config_error(at + ": " + key + " " + what);
}

} // namespace

// ---------------------------------------------------------------------------
// public interface
// ---------------------------------------------------------------------------

const char* scenario_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::WaveDecay: return "wave-decay";
        case ScenarioKind::OracleCheck: return "oracle-check";
        case ScenarioKind::KappaSweep: return "kappa-sweep";
        case ScenarioKind::Stability: return "stability";
        case ScenarioKind::BoundaryOde: return "boundary-ode";
        case ScenarioKind::FullAcceptance: return "full-acceptance";
    }
    throw config_error("scenario_name: unknown kind");
}

ScenarioKind scenario_from_name(const std::string& name) {
    for (ScenarioKind k :
         {ScenarioKind::WaveDecay, ScenarioKind::OracleCheck, ScenarioKind::KappaSweep,
          ScenarioKind::Stability, ScenarioKind::BoundaryOde, ScenarioKind::FullAcceptance})
        if (name == scenario_name(k)) return k;
    throw config_error("unknown scenario '" + name + "'");
}

std::vector<std::string> schema_keys() {
    std::vector<std::string> out;
    for (const auto& e : kSchema) out.emplace_back(e.key);
    return out;
}

std::map<std::string, std::string> scenario_default_map(ScenarioKind kind) {
    std::map<std::string, std::string> d = {
        {"scenario", scenario_name(kind)},
        {"out_dir", std::string("out/") + scenario_name(kind)},
        {"gas.R", "1"},
        {"gas.gamma", "1.6666666666666667"},
        {"gas.mu", "1"},
        {"gas.kappa", "1"},
        {"gas.theta_minus", "1"},
        {"gas.theta_plus", "2"},
        {"gas.v_plus", "2"},
        {"wave.alpha", "1"},
        {"wave.delta0", "0.25"},
        {"wave.coupling_exponent", "2"},
        {"run.cfl", "0.2"},
        {"run.dt_max", "inf"},
        {"run.dt0", "0"},
        {"run.contamination_eps", "1e-8"},
        {"run.monitor_contamination", "true"},
        {"run.seed", "20250817"},
        {"run.decay_fit_lo", "10"},
        {"run.decay_fit_hi", "100"},
        {"run.growth_fit_lo", "1"},
        {"run.growth_fit_hi", "100"},
    };
    switch (kind) {
        case ScenarioKind::WaveDecay:
            d["grid.length"] = "100";
            d["grid.n"] = "4001";
            d["run.T"] = "100";
            d["run.snapshot_count"] = "25";
            d["run.snapshot_spacing"] = "log";
            break;
        case ScenarioKind::OracleCheck:
            d["grid.length"] = "60";
            d["grid.n"] = "4001";
            d["run.T"] = "1";
            d["run.snapshot_count"] = "11";
            d["run.snapshot_spacing"] = "linear";
            break;
        case ScenarioKind::KappaSweep:
            d["wave.delta0"] = "0.5";
            d["grid.length"] = "4";
            d["grid.n"] = "8001";
            d["run.T"] = "1";
            d["run.snapshot_count"] = "2";
            d["run.snapshot_spacing"] = "linear";
            d["sweep.kappa_values"] = "0.1, 0.05, 0.025";
            break;
        case ScenarioKind::Stability:
            // the far tail must sit within 1e-6 of theta_plus for the
            // oscillation budget: exp(1 - sqrt(1 + 250)) = 3.6e-7
            d["wave.delta0"] = "0.5";
            // kappa = mu*gamma*R/(gamma-1) makes the background an exact
            // momentum solution (its residual coefficient a - mu*p_plus/R
            // vanishes), so the run measures perturbation decay instead of
            // the defect-driven response
            d["gas.kappa"] = "2.5";
            d["grid.length"] = "250";
            d["grid.n"] = "8001";
            d["run.T"] = "100";
            d["run.snapshot_count"] = "40";
            d["run.snapshot_spacing"] = "log";
            d["run.cfl"] = "0.25";
            d["run.contamination_eps"] = "1e-5";
            d["perturbation.phi"] = "deriv 1.0 6.0 2.0 25.0";
            d["perturbation.psi"] = "deriv 1.0 6.5 2.0 25.0";
            d["perturbation.zeta"] = "deriv 1.0 7.0 2.0 25.0";
            d["perturbation.target_l2"] = "0.02";
            break;
        case ScenarioKind::BoundaryOde:
            d["gas.theta_plus"] = "1";
            d["gas.v_plus"] = "1";
            d["grid.length"] = "1";
            d["grid.n"] = "401";
            d["run.T"] = "5";
            d["run.snapshot_count"] = "26";
            d["run.snapshot_spacing"] = "linear";
            d["run.cfl"] = "0.3";
            d["run.monitor_contamination"] = "false";
            d["perturbation.phi0_boundary"] = "0.05";
            d["perturbation.phi0_boundary_width"] = "0.2";
            break;
        case ScenarioKind::FullAcceptance:
            // the orchestrator builds its sub-configs itself; these only keep
            // the shared resolution path happy
            d["grid.length"] = "20";
            d["grid.n"] = "201";
            d["run.T"] = "1";
            d["run.snapshot_count"] = "2";
            d["run.snapshot_spacing"] = "linear";
            break;
    }
    return d;
}

ScenarioConfig parse_config(ScenarioKind kind, const std::string& path,
                            const std::vector<std::string>& overrides) {
    RawMap raw;
    for (const auto& [k, v] : scenario_default_map(kind)) raw[k] = {v, 0};
    if (!path.empty()) merge_file(raw, path, kind);
    merge_overrides(raw, overrides, kind);

    ScenarioConfig cfg;
    cfg.kind = kind;

    const auto dbl = [&](const std::string& key, double fallback) {
        const RawEntry* e = find(raw, key);
        return e != nullptr ? parse_dbl(raw, key, *e) : fallback;
    };
    const auto integer = [&](const std::string& key, long fallback) {
        const RawEntry* e = find(raw, key);
        return e != nullptr ? parse_int(key, *e) : fallback;
    };

    // gas: key-local range checks first so violations carry line context
    GasParams g;
    g.R = dbl("gas.R", 1.0);
    g.gamma = dbl("gas.gamma", 5.0 / 3.0);
    g.mu = dbl("gas.mu", 1.0);
    g.kappa = dbl("gas.kappa", 1.0);
    g.theta_minus = dbl("gas.theta_minus", 1.0);
    g.theta_plus = dbl("gas.theta_plus", 2.0);
    g.v_plus = dbl("gas.v_plus", 2.0);
    require(g.R > 0.0, raw, "gas.R", "must be positive");
    require(g.gamma > 1.0, raw, "gas.gamma", "must exceed 1");
    require(g.mu > 0.0, raw, "gas.mu", "must be positive");
    require(g.kappa > 0.0, raw, "gas.kappa", "must be positive");
    require(g.theta_minus > 0.0, raw, "gas.theta_minus", "must be positive");
    require(g.theta_plus > 0.0, raw, "gas.theta_plus", "must be positive");
    require(g.v_plus > 0.0, raw, "gas.v_plus", "must be positive");
    cfg.gas = make_params(g);

    cfg.wave.alpha = dbl("wave.alpha", 1.0);
    cfg.wave.delta0 = dbl("wave.delta0", 0.25);
    cfg.wave.coupling_exponent = dbl("wave.coupling_exponent", 2.0);
    require(cfg.wave.alpha > 0.0, raw, "wave.alpha", "must be positive");
    require(cfg.wave.delta0 > 0.0 && cfg.wave.delta0 < 1.0, raw, "wave.delta0",
            "must lie in (0, 1)");
    require(cfg.wave.coupling_exponent > 0.0, raw, "wave.coupling_exponent",
            "must be positive");

    cfg.grid_length = dbl("grid.length", 0.0);
    cfg.grid_n = static_cast<int>(integer("grid.n", 0));
    require(cfg.grid_length > 0.0, raw, "grid.length", "must be positive");
    require(cfg.grid_n >= 4, raw, "grid.n", "needs at least 4 nodes");

    cfg.horizon = dbl("run.T", 0.0);
    require(cfg.horizon > 0.0, raw, "run.T", "must be positive");

    cfg.ctl.cfl_factor = dbl("run.cfl", 0.2);
    require(cfg.ctl.cfl_factor > 0.0 && cfg.ctl.cfl_factor <= 0.5, raw, "run.cfl",
            "must lie in (0, 0.5]");
    cfg.ctl.dt_max = dbl("run.dt_max", std::numeric_limits<double>::infinity());
    require(cfg.ctl.dt_max > 0.0, raw, "run.dt_max", "must be positive");
    cfg.ctl.contamination_eps = dbl("run.contamination_eps", 1e-8);
    require(cfg.ctl.contamination_eps > 0.0, raw, "run.contamination_eps",
            "must be positive");
    if (const RawEntry* e = find(raw, "run.monitor_contamination"))
        cfg.ctl.monitor_contamination = parse_bool("run.monitor_contamination", *e);
    cfg.dt0 = dbl("run.dt0", 0.0);
    require(cfg.dt0 >= 0.0, raw, "run.dt0", "must be nonnegative");

    if (const RawEntry* e = find(raw, "run.seed")) cfg.seed = parse_u64("run.seed", *e);
    cfg.pert.seed = cfg.seed;

    cfg.decay_fit_lo = dbl("run.decay_fit_lo", 10.0);
    cfg.decay_fit_hi = dbl("run.decay_fit_hi", 100.0);
    cfg.growth_fit_lo = dbl("run.growth_fit_lo", 1.0);
    cfg.growth_fit_hi = dbl("run.growth_fit_hi", 100.0);
    require(cfg.decay_fit_lo >= 0.0 && cfg.decay_fit_lo < cfg.decay_fit_hi, raw,
            "run.decay_fit_lo", "needs 0 <= lo < hi");
    require(cfg.growth_fit_lo >= 0.0 && cfg.growth_fit_lo < cfg.growth_fit_hi, raw,
            "run.growth_fit_lo", "needs 0 <= lo < hi");

    // snapshot schedule: an explicit list wins over count + spacing
    if (const RawEntry* e = find(raw, "run.snapshot_times")) {
        cfg.snapshot_times = parse_list("run.snapshot_times", *e);
        for (double t : cfg.snapshot_times) {
            require(t >= 0.0, raw, "run.snapshot_times", "entries must be nonnegative");
            require(t <= cfg.horizon * (1.0 + 1e-12), raw, "run.snapshot_times",
                    "entry past the horizon run.T");
        }
        cfg.snapshot_times.push_back(0.0);
        cfg.snapshot_times.push_back(cfg.horizon);
        std::sort(cfg.snapshot_times.begin(), cfg.snapshot_times.end());
        cfg.snapshot_times.erase(
            std::unique(cfg.snapshot_times.begin(), cfg.snapshot_times.end()),
            cfg.snapshot_times.end());
    } else {
        const long count = integer("run.snapshot_count", 2);
        require(count >= 2, raw, "run.snapshot_count", "needs at least 2 snapshots");
        std::string spacing = "linear";
        if (const RawEntry* e2 = find(raw, "run.snapshot_spacing")) {
            spacing = e2->value;
            require(spacing == "linear" || spacing == "log", raw, "run.snapshot_spacing",
                    "must be 'linear' or 'log'");
        }
        cfg.snapshot_times.push_back(0.0);
        if (spacing == "linear") {
            for (long i = 1; i < count; ++i)
                cfg.snapshot_times.push_back(cfg.horizon * double(i) / double(count - 1));
        } else {
            // two decades up to the horizon, plus the initial time
            const double lo = cfg.horizon / 100.0;
            for (long i = 0; i < count - 1; ++i)
                cfg.snapshot_times.push_back(
                    lo * std::pow(100.0, double(i) / double(count - 2)));
        }
        cfg.snapshot_times.back() = cfg.horizon;
    }

    if (const RawEntry* e = find(raw, "perturbation.phi"))
        cfg.pert.phi = parse_components("perturbation.phi", *e);
    if (const RawEntry* e = find(raw, "perturbation.psi"))
        cfg.pert.psi = parse_components("perturbation.psi", *e);
    if (const RawEntry* e = find(raw, "perturbation.zeta"))
        cfg.pert.zeta = parse_components("perturbation.zeta", *e);
    cfg.pert.phi0_boundary = dbl("perturbation.phi0_boundary", 0.0);
    cfg.pert.phi0_boundary_width = dbl("perturbation.phi0_boundary_width", 0.4);
    require(cfg.pert.phi0_boundary_width > 0.0, raw, "perturbation.phi0_boundary_width",
            "must be positive");
    cfg.pert.target_l2 = dbl("perturbation.target_l2", -1.0);

    if (const RawEntry* e = find(raw, "sweep.kappa_values")) {
        cfg.kappa_values = parse_list("sweep.kappa_values", *e);
        for (double k : cfg.kappa_values)
            require(k > 0.0, raw, "sweep.kappa_values", "entries must be positive");
    }

    if (const RawEntry* e = find(raw, "out_dir")) cfg.out_dir = e->value;

    for (const auto& [k, v] : raw) cfg.resolved[k] = v.value;
    return cfg;
}

} // namespace cwlab
