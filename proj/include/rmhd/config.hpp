#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rmhd/experiments.hpp"

namespace rmhd {

enum class ExperimentKind { run, sweep_qh, sweep_nh, jsweep, stability, check };

struct OutputConfig {
    std::string directory = "out";
    int snapshot_every = 0;  // 0 = final snapshot only
    int timeseries_every = 1;
};

struct RunConfig {
    GridSpec grid;
    PhysParams physics;
    std::vector<double> epsilon_list;  // sweeps; single runs use physics.epsilon
    InitialDataPreset initial_data;
    IntegratorConfig integrator;
    ExperimentKind experiment = ExperimentKind::run;
    std::vector<int> j_list = {8, 16, 32};
    std::vector<double> stability_delta0 = {1e-3, 5e-4, 2.5e-4};
    OutputConfig output;
    std::optional<std::uint64_t> seed;
    int n_threads = 4;
};

// Parse and validate a JSON config; unknown keys are rejected with a
// nearest-match suggestion. Throws ParseError / SchemaError / BoundsError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Hash over the semantically meaningful content (defaults applied,
// key order canonical), insensitive to formatting.
std::string config_hash(const RunConfig& cfg);

std::string default_config_text();

}  // namespace rmhd
