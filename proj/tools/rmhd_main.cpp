#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rmhd/config.hpp"
#include "rmhd/io.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using namespace rmhd;

SweepPlan plan_from(const RunConfig& cfg) {
    SweepPlan plan;
    plan.epsilons = cfg.epsilon_list;
    plan.grid = cfg.grid;
    plan.params = cfg.physics;
    plan.preset = cfg.initial_data;
    plan.integrator = cfg.integrator;
    plan.t_end = cfg.integrator.t_end;
    plan.n_threads = cfg.n_threads;
    if (const char* env = std::getenv("RMHD_THREADS")) plan.n_threads = std::atoi(env);
    return plan;
}

std::filesystem::path prepare_output(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.output.directory);
    std::filesystem::create_directories(dir);
    return dir;
}

void finish_manifest(const RunConfig& cfg, const std::filesystem::path& dir,
                     std::vector<std::string> files, double seconds) {
    RunManifest man;
    man.config_hash = config_hash(cfg);
    man.version = kVersion;
    man.status = "ok";
    man.wall_clock_seconds = seconds;
    man.files = std::move(files);
    write_manifest(man, (dir / "manifest.json").string());
}

int do_run(const RunConfig& cfg, bool limit_system) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dir = prepare_output(cfg);
    std::vector<DiagnosticsRecord> records;
    std::vector<std::string> files;

    auto snap_path = [&](int idx) {
        return (dir / ("snapshot_" + std::to_string(idx) + ".rmhd1")).string();
    };
    int snap_idx = 0, step_count = 0;

    if (limit_system) {
        LimitState state = make_limit_data(cfg.initial_data, cfg.grid);
        const double nu1 = cfg.physics.nu.eval(1.0);
        const double mu1 = cfg.physics.mu.eval(1.0);
        records.push_back(diagnostics_compute(state, nu1, mu1));
        IntegratorConfig icfg = cfg.integrator;
        icfg.invariant_check_every = cfg.output.timeseries_every;
        advance_to(state, nu1, mu1, icfg, cfg.integrator.t_end,
                   [&](const LimitState& s, const StepReport&) {
                       records.push_back(diagnostics_compute(s, nu1, mu1));
                       ++step_count;
                       if (cfg.output.snapshot_every > 0 &&
                           step_count % cfg.output.snapshot_every == 0) {
                           write_snapshot(snapshot_of(s), snap_path(snap_idx));
                           files.push_back(snap_path(snap_idx++));
                       }
                   });
        write_snapshot(snapshot_of(state), (dir / "final.rmhd1").string());
    } else {
        PrimitiveState state = make_primitive_data(cfg.initial_data, cfg.grid, cfg.physics);
        ScalarField rho0 = reference_density(cfg.initial_data, cfg.grid);
        records.push_back(diagnostics_compute(state, cfg.physics, rho0));
        IntegratorConfig icfg = cfg.integrator;
        icfg.invariant_check_every = cfg.output.timeseries_every;
        advance_to(state, cfg.physics, icfg, cfg.integrator.t_end,
                   [&](const PrimitiveState& s, const StepReport&) {
                       records.push_back(diagnostics_compute(s, cfg.physics, rho0));
                       ++step_count;
                       if (cfg.output.snapshot_every > 0 &&
                           step_count % cfg.output.snapshot_every == 0) {
                           write_snapshot(snapshot_of(s), snap_path(snap_idx));
                           files.push_back(snap_path(snap_idx++));
                       }
                   });
        write_snapshot(snapshot_of(state), (dir / "final.rmhd1").string());
    }
    files.push_back((dir / "final.rmhd1").string());
    write_timeseries(records, (dir / "timeseries.csv").string());
    files.push_back((dir / "timeseries.csv").string());

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    finish_manifest(cfg, dir, files, secs);
    std::cout << "run complete: " << records.size() << " records -> " << dir.string() << "\n";
    return 0;
}

int write_report(const RunConfig& cfg, const std::string& name, const std::string& json,
                 double seconds) {
    const auto dir = prepare_output(cfg);
    const auto path = (dir / name).string();
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report: " + path);
    out << json << "\n";
    out.close();
    finish_manifest(cfg, dir, {path}, seconds);
    std::cout << "report written: " << path << "\n";
    return 0;
}

int do_sweep(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepPlan plan = plan_from(cfg);
    ConvergenceReport rep = cfg.experiment == ExperimentKind::sweep_nh
                                ? nonhomog_constraint_probe(plan)
                                : quasi_homog_convergence(plan);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return write_report(cfg, rep.experiment + ".json", rep.to_json(), secs);
}

int do_jsweep(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ConvergenceReport rep = friedrichs_jsweep(cfg.j_list, plan_from(cfg));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return write_report(cfg, "friedrichs_jsweep.json", rep.to_json(), secs);
}

int do_stability(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    StabilityReport rep = stability_twin_run(plan_from(cfg), cfg.stability_delta0);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return write_report(cfg, "stability.json", rep.to_json(), secs);
}

int do_check(const std::vector<int>& grids, std::uint64_t seed, bool corrupt) {
    SuiteConfig cfg;
    cfg.grid_sizes = grids;
    cfg.seed = seed;
    cfg.corrupt_leray = corrupt;
    InvariantLedger led = invariant_suite(cfg);
    for (const auto& e : led.entries)
        std::cout << (e.pass ? "PASS" : "FAIL") << "  " << e.name << "  observed=" << e.observed
                  << " tol=" << e.tolerance << "\n";
    std::cout << (led.all_pass() ? "all invariants pass" : "invariant failures present") << "\n";
    return led.all_pass() ? 0 : 3;
}

int do_info() {
    std::cout << "rmhd " << kVersion << "\n";
    std::cout << "build: " <<
#ifdef NDEBUG
        "release"
#else
        "debug"
#endif
              << ", " << __DATE__ << "\n";
    std::cout << "default config:\n" << default_config_text();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral rotating MHD suite on the 2-D torus"};
    app.require_subcommand(1);

    std::string config_path;
    bool limit_system = false;

    auto* run = app.add_subcommand("run", "advance a single trajectory");
    run->add_option("config", config_path, "JSON config file")->required();
    run->add_flag("--limit", limit_system, "run the quasi-homogeneous limit system");

    auto* sweep = app.add_subcommand("sweep", "epsilon sweep (sweep_qh or sweep_nh experiment)");
    sweep->add_option("config", config_path, "JSON config file")->required();

    auto* jsweep = app.add_subcommand("jsweep", "Friedrichs truncation sweep");
    jsweep->add_option("config", config_path, "JSON config file")->required();

    auto* stability = app.add_subcommand("stability", "twin-run stability study");
    stability->add_option("config", config_path, "JSON config file")->required();

    std::vector<int> grids = {64};
    std::uint64_t seed = 7;
    bool corrupt = false;
    auto* check = app.add_subcommand("check", "run the invariant suite");
    check->add_option("--grid", grids, "grid sizes");
    check->add_option("--seed", seed, "suite seed");
    check->add_flag("--corrupt-leray", corrupt, "fault-injection hook (expected to fail)");

    auto* info = app.add_subcommand("info", "print version, build info and the default config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        if (*info) return do_info();
        if (*check) return do_check(grids, seed, corrupt);
        RunConfig cfg = load_config(config_path);
        if (*run) return do_run(cfg, limit_system);
        if (*sweep) {
            if (cfg.experiment != ExperimentKind::sweep_qh &&
                cfg.experiment != ExperimentKind::sweep_nh)
                throw SchemaError("sweep needs experiment sweep_qh or sweep_nh");
            return do_sweep(cfg);
        }
        if (*jsweep) return do_jsweep(cfg);
        if (*stability) return do_stability(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 1;
    } catch (const PresetInvalid& e) {
        std::cerr << "preset error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
