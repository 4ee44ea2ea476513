#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rmhd/presets.hpp"
#include "rmhd/timestep.hpp"

namespace rmhd {

struct SweepPlan {
    std::vector<double> epsilons;  // strictly decreasing, all > 0
    GridSpec grid;
    PhysParams params;  // epsilon is overridden per sweep member
    InitialDataPreset preset;
    IntegratorConfig integrator;
    double t_end = 1.0;
    std::vector<double> comparison_norms = {0.0, -1.0};
    int n_samples = 17;
    int n_threads = 4;

    void validate() const;
};

struct RunOutcome {
    double epsilon = 0.0;
    bool ok = false;
    std::string failure_reason;
    std::vector<double> sample_times;
    std::vector<DiagnosticsRecord> diagnostics;  // one per sample time
};

struct ConvergenceReport {
    std::string experiment;
    // distances["u"][s][eps index] = sup over samples of ||u_eps - u_lim||_{H^s}
    std::map<std::string, std::map<double, std::vector<double>>> distances;
    std::vector<double> epsilons;
    std::vector<int> j_values;  // friedrichs sweep only
    // constraint / boundedness curves per epsilon (nonhomog probe)
    std::map<std::string, std::vector<double>> curves;
    std::vector<RunOutcome> runs;

    std::string to_json() const;
};

struct StabilityReport {
    std::vector<double> delta0;              // perturbation scales
    std::vector<std::vector<double>> times;  // per scale
    std::vector<std::vector<double>> energy;       // E(t) per scale
    std::vector<std::vector<double>> dissipation;  // cumulative grad-norm integral
    std::vector<double> sup_ratio;           // sup_t E(t)/E(0) per scale
    double groenwall_constant = 0.0;         // measured from the first scale

    std::string to_json() const;
};

ConvergenceReport quasi_homog_convergence(const SweepPlan& plan);
ConvergenceReport nonhomog_constraint_probe(const SweepPlan& plan);
ConvergenceReport friedrichs_jsweep(const std::vector<int>& j_list, const SweepPlan& plan);
StabilityReport stability_twin_run(const SweepPlan& plan, const std::vector<double>& delta0);

struct InvariantEntry {
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double tolerance = 0.0;
};

struct InvariantLedger {
    std::vector<InvariantEntry> entries;
    bool all_pass() const;
    std::string to_json() const;
};

struct SuiteConfig {
    std::vector<int> grid_sizes = {64};
    std::uint64_t seed = 7;
    bool corrupt_leray = false;  // fault-injection hook
};

InvariantLedger invariant_suite(const SuiteConfig& cfg);

}  // namespace rmhd
