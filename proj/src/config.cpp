#include "rmhd/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rmhd {

namespace {

using nlohmann::json;

int levenshtein(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (size_t j = 1; j <= b.size(); ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

const std::map<std::string, std::string>& synonyms() {
    static const std::map<std::string, std::string> table = {
        {"viscosity", "nu"},       {"viscocity", "nu"},    {"resistivity", "mu"},
        {"timestep", "dt"},        {"time_step", "dt"},    {"tend", "t_end"},
        {"end_time", "t_end"},     {"resolution", "n"},    {"gridsize", "n"},
        {"eps", "epsilon"},        {"rho_floor", "rho_min"},
    };
    return table;
}

[[noreturn]] void unknown_key(const std::string& where, const std::string& key,
                              const std::vector<std::string>& allowed) {
    std::string best;
    int best_d = 1 << 20;
    auto syn = synonyms().find(key);
    if (syn != synonyms().end() &&
        std::find(allowed.begin(), allowed.end(), syn->second) != allowed.end()) {
        best = syn->second;
        best_d = 0;
    } else {
        for (const auto& cand : allowed) {
            const int d = levenshtein(key, cand);
            if (d < best_d) {
                best_d = d;
                best = cand;
            }
        }
    }
    std::ostringstream msg;
    msg << "unknown key \"" << (where.empty() ? "" : where + ".") << key << "\"";
    if (!best.empty() && best_d <= std::max<int>(2, static_cast<int>(key.size()) / 2))
        msg << "; did you mean \"" << best << "\"?";
    throw SchemaError(msg.str());
}

void check_keys(const json& obj, const std::string& where,
                const std::vector<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            unknown_key(where, it.key(), allowed);
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw SchemaError("key \"" + key + "\": " + e.what());
    }
}

CoefficientLaw parse_law(const json& obj, const std::string& where) {
    if (obj.is_number()) return CoefficientLaw::constant(obj.get<double>(), obj.get<double>());
    if (!obj.is_object()) throw SchemaError(where + ": expected a number or an object");
    check_keys(obj, where, {"kind", "value", "intercept", "slope", "rho", "floor"});
    const std::string kind = get_or<std::string>(obj, "kind", "constant");
    if (kind == "constant") {
        const double v = get_or<double>(obj, "value", 1.0);
        return CoefficientLaw::constant(v, get_or<double>(obj, "floor", v));
    }
    if (kind == "affine") {
        const double c0 = get_or<double>(obj, "intercept", 1.0);
        const double c1 = get_or<double>(obj, "slope", 0.0);
        if (!obj.contains("floor")) throw SchemaError(where + ": affine law needs a floor");
        return CoefficientLaw::affine(c0, c1, obj.at("floor").get<double>());
    }
    if (kind == "table") {
        if (!obj.contains("rho") || !obj.contains("value") || !obj.contains("floor"))
            throw SchemaError(where + ": table law needs rho, value and floor");
        return CoefficientLaw::table(obj.at("rho").get<std::vector<double>>(),
                                     obj.at("value").get<std::vector<double>>(),
                                     obj.at("floor").get<double>());
    }
    throw SchemaError(where + ": unknown law kind \"" + kind + "\"");
}

InitialDataPreset::Kind parse_preset_kind(const std::string& s) {
    if (s == "taylor_green") return InitialDataPreset::Kind::taylor_green;
    if (s == "random_bandlimited") return InitialDataPreset::Kind::random_bandlimited;
    if (s == "quasi_homog") return InitialDataPreset::Kind::quasi_homog;
    if (s == "nonhomog") return InitialDataPreset::Kind::nonhomog;
    throw SchemaError("unknown preset \"" + s + "\"");
}

ExperimentKind parse_experiment(const std::string& s) {
    if (s == "run") return ExperimentKind::run;
    if (s == "sweep_qh") return ExperimentKind::sweep_qh;
    if (s == "sweep_nh") return ExperimentKind::sweep_nh;
    if (s == "jsweep") return ExperimentKind::jsweep;
    if (s == "stability") return ExperimentKind::stability;
    if (s == "check") return ExperimentKind::check;
    throw SchemaError("unknown experiment \"" + s + "\"");
}

const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::run: return "run";
        case ExperimentKind::sweep_qh: return "sweep_qh";
        case ExperimentKind::sweep_nh: return "sweep_nh";
        case ExperimentKind::jsweep: return "jsweep";
        case ExperimentKind::stability: return "stability";
        case ExperimentKind::check: return "check";
    }
    return "run";
}

const char* preset_name(InitialDataPreset::Kind k) {
    switch (k) {
        case InitialDataPreset::Kind::taylor_green: return "taylor_green";
        case InitialDataPreset::Kind::random_bandlimited: return "random_bandlimited";
        case InitialDataPreset::Kind::quasi_homog: return "quasi_homog";
        case InitialDataPreset::Kind::nonhomog: return "nonhomog";
    }
    return "taylor_green";
}

json law_json(const CoefficientLaw& law) {
    json j;
    switch (law.kind) {
        case CoefficientLaw::Kind::constant:
            j["kind"] = "constant";
            j["value"] = law.c0;
            break;
        case CoefficientLaw::Kind::affine:
            j["kind"] = "affine";
            j["intercept"] = law.c0;
            j["slope"] = law.c1;
            break;
        case CoefficientLaw::Kind::table:
            j["kind"] = "table";
            j["rho"] = law.table_rho;
            j["value"] = law.table_value;
            break;
    }
    j["floor"] = law.floor;
    return j;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw SchemaError("config root must be a JSON object");
    check_keys(root, "",
               {"experiment", "grid", "physics", "initial_data", "integrator", "epsilon_list",
                "j_list", "stability_delta0", "output", "seed", "n_threads"});

    RunConfig cfg;
    if (root.contains("experiment"))
        cfg.experiment = parse_experiment(root.at("experiment").get<std::string>());

    if (root.contains("grid")) {
        const json& g = root.at("grid");
        check_keys(g, "grid", {"n", "length"});
        cfg.grid.n = get_or<int>(g, "n", cfg.grid.n);
        cfg.grid.length = get_or<double>(g, "length", cfg.grid.length);
    }
    validate(cfg.grid);

    if (root.contains("physics")) {
        const json& p = root.at("physics");
        check_keys(p, "physics",
                   {"epsilon", "nu", "mu", "rho_star", "rho_min", "qh_cancellation"});
        cfg.physics.epsilon = get_or<double>(p, "epsilon", cfg.physics.epsilon);
        if (p.contains("nu")) cfg.physics.nu = parse_law(p.at("nu"), "physics.nu");
        if (p.contains("mu")) cfg.physics.mu = parse_law(p.at("mu"), "physics.mu");
        cfg.physics.rho_star = get_or<double>(p, "rho_star", cfg.physics.rho_star);
        cfg.physics.rho_min = get_or<double>(p, "rho_min", cfg.physics.rho_min);
        cfg.physics.qh_cancellation =
            get_or<bool>(p, "qh_cancellation", cfg.physics.qh_cancellation);
    }
    cfg.physics.validate();

    if (root.contains("initial_data")) {
        const json& d = root.at("initial_data");
        check_keys(d, "initial_data",
                   {"preset", "seed", "band", "amplitude", "b_amplitude", "r_amplitude",
                    "rho0_amplitude"});
        if (d.contains("preset"))
            cfg.initial_data.kind = parse_preset_kind(d.at("preset").get<std::string>());
        cfg.initial_data.seed = get_or<std::uint64_t>(d, "seed", cfg.initial_data.seed);
        cfg.initial_data.band = get_or<int>(d, "band", cfg.initial_data.band);
        cfg.initial_data.amplitude = get_or<double>(d, "amplitude", cfg.initial_data.amplitude);
        cfg.initial_data.b_amplitude =
            get_or<double>(d, "b_amplitude", cfg.initial_data.b_amplitude);
        cfg.initial_data.r_amplitude =
            get_or<double>(d, "r_amplitude", cfg.initial_data.r_amplitude);
        cfg.initial_data.rho0_amplitude =
            get_or<double>(d, "rho0_amplitude", cfg.initial_data.rho0_amplitude);
        if (cfg.initial_data.band < 1 || cfg.initial_data.band > cfg.grid.max_mode())
            throw BoundsError("initial_data.band must lie in [1, n/3]");
    }

    if (root.contains("integrator")) {
        const json& t = root.at("integrator");
        check_keys(t, "integrator",
                   {"scheme", "dt", "cfl", "t_end", "c_cor", "dealias", "invariant_check_every",
                    "dt_max", "friedrichs_j"});
        if (t.contains("scheme")) {
            const std::string s = t.at("scheme").get<std::string>();
            if (s == "imex_rk2")
                cfg.integrator.scheme = Scheme::imex_rk2;
            else if (s == "imex_rk3")
                cfg.integrator.scheme = Scheme::imex_rk3;
            else
                throw SchemaError("unknown scheme \"" + s + "\"");
        }
        if (t.contains("dt")) cfg.integrator.dt = t.at("dt").get<double>();
        if (t.contains("cfl")) cfg.integrator.cfl = t.at("cfl").get<double>();
        cfg.integrator.t_end = get_or<double>(t, "t_end", cfg.integrator.t_end);
        cfg.integrator.c_cor = get_or<double>(t, "c_cor", cfg.integrator.c_cor);
        cfg.integrator.dealias = get_or<bool>(t, "dealias", cfg.integrator.dealias);
        cfg.integrator.invariant_check_every =
            get_or<int>(t, "invariant_check_every", cfg.integrator.invariant_check_every);
        cfg.integrator.dt_max = get_or<double>(t, "dt_max", cfg.integrator.dt_max);
        cfg.integrator.friedrichs_j = get_or<int>(t, "friedrichs_j", cfg.integrator.friedrichs_j);
    }
    if (!cfg.integrator.dt && !cfg.integrator.cfl) cfg.integrator.cfl = 0.4;
    cfg.integrator.validate();

    cfg.epsilon_list = get_or<std::vector<double>>(root, "epsilon_list", cfg.epsilon_list);
    cfg.j_list = get_or<std::vector<int>>(root, "j_list", cfg.j_list);
    cfg.stability_delta0 =
        get_or<std::vector<double>>(root, "stability_delta0", cfg.stability_delta0);

    if (root.contains("output")) {
        const json& o = root.at("output");
        check_keys(o, "output", {"directory", "snapshot_every", "timeseries_every"});
        cfg.output.directory = get_or<std::string>(o, "directory", cfg.output.directory);
        cfg.output.snapshot_every = get_or<int>(o, "snapshot_every", cfg.output.snapshot_every);
        cfg.output.timeseries_every =
            get_or<int>(o, "timeseries_every", cfg.output.timeseries_every);
        if (cfg.output.snapshot_every < 0 || cfg.output.timeseries_every < 1)
            throw BoundsError("output cadences must be nonnegative (timeseries_every >= 1)");
    }

    if (root.contains("seed")) cfg.seed = root.at("seed").get<std::uint64_t>();
    if (cfg.seed) cfg.initial_data.seed = *cfg.seed;
    cfg.n_threads = get_or<int>(root, "n_threads", cfg.n_threads);
    if (cfg.n_threads < 1 || cfg.n_threads > 64)
        throw BoundsError("n_threads must lie in [1, 64]");

    if ((cfg.experiment == ExperimentKind::sweep_qh ||
         cfg.experiment == ExperimentKind::sweep_nh) &&
        cfg.epsilon_list.empty())
        throw BoundsError("sweeps need a nonempty epsilon_list");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_hash(const RunConfig& cfg) {
    json j;
    j["experiment"] = experiment_name(cfg.experiment);
    j["grid"] = {{"n", cfg.grid.n}, {"length", cfg.grid.length}};
    j["physics"] = {{"epsilon", cfg.physics.epsilon},
                    {"nu", law_json(cfg.physics.nu)},
                    {"mu", law_json(cfg.physics.mu)},
                    {"rho_star", cfg.physics.rho_star},
                    {"rho_min", cfg.physics.rho_min},
                    {"qh_cancellation", cfg.physics.qh_cancellation}};
    j["initial_data"] = {{"preset", preset_name(cfg.initial_data.kind)},
                         {"seed", cfg.initial_data.seed},
                         {"band", cfg.initial_data.band},
                         {"amplitude", cfg.initial_data.amplitude},
                         {"b_amplitude", cfg.initial_data.b_amplitude},
                         {"r_amplitude", cfg.initial_data.r_amplitude},
                         {"rho0_amplitude", cfg.initial_data.rho0_amplitude}};
    json t;
    t["scheme"] = cfg.integrator.scheme == Scheme::imex_rk2 ? "imex_rk2" : "imex_rk3";
    if (cfg.integrator.dt) t["dt"] = *cfg.integrator.dt;
    if (cfg.integrator.cfl) t["cfl"] = *cfg.integrator.cfl;
    t["t_end"] = cfg.integrator.t_end;
    t["c_cor"] = cfg.integrator.c_cor;
    t["dealias"] = cfg.integrator.dealias;
    t["invariant_check_every"] = cfg.integrator.invariant_check_every;
    t["dt_max"] = cfg.integrator.dt_max;
    t["friedrichs_j"] = cfg.integrator.friedrichs_j;
    j["integrator"] = t;
    j["epsilon_list"] = cfg.epsilon_list;
    j["j_list"] = cfg.j_list;
    j["stability_delta0"] = cfg.stability_delta0;
    j["n_threads"] = cfg.n_threads;

    // FNV-1a over the canonical dump (nlohmann orders object keys).
    const std::string dump = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string default_config_text() {
    return R"({
  "experiment": "run",
  "grid": { "n": 64, "length": 6.283185307179586 },
  "physics": {
    "epsilon": 0.1,
    "nu": { "kind": "constant", "value": 1.0, "floor": 1.0 },
    "mu": { "kind": "constant", "value": 1.0, "floor": 1.0 },
    "rho_star": 2.0,
    "rho_min": 0.05,
    "qh_cancellation": false
  },
  "initial_data": {
    "preset": "quasi_homog",
    "seed": 7,
    "band": 4,
    "amplitude": 1.0,
    "b_amplitude": 0.5,
    "r_amplitude": 0.5
  },
  "integrator": {
    "scheme": "imex_rk3",
    "cfl": 0.4,
    "t_end": 1.0,
    "c_cor": 0.5,
    "dealias": true,
    "invariant_check_every": 1,
    "dt_max": 0.1
  },
  "epsilon_list": [0.1, 0.05, 0.025, 0.0125],
  "j_list": [8, 16, 32],
  "stability_delta0": [1e-3, 5e-4, 2.5e-4],
  "output": { "directory": "out", "snapshot_every": 0, "timeseries_every": 1 },
  "n_threads": 4
}
)";
}

}  // namespace rmhd
