#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rmhd/config.hpp"
#include "rmhd/dynamics.hpp"

namespace rmhd {

// Fixed CSV column order; values printed with 17 significant digits.
extern const std::vector<std::string> kTimeseriesColumns;

std::string timeseries_header();
std::string timeseries_row(const DiagnosticsRecord& rec);
void write_timeseries(const std::vector<DiagnosticsRecord>& records, const std::string& path);

// Binary snapshot, magic "RMHD1", little-endian doubles, row-major per field.
struct FieldSnapshot {
    GridSpec grid;
    double time = 0.0;
    std::vector<std::pair<std::string, ScalarField>> fields;
};

void write_snapshot(const FieldSnapshot& snap, const std::string& path);
FieldSnapshot read_snapshot(const std::string& path);

FieldSnapshot snapshot_of(const PrimitiveState& state);
FieldSnapshot snapshot_of(const LimitState& state);

struct RunManifest {
    std::string config_hash;
    std::string version;
    std::string status;
    double wall_clock_seconds = 0.0;
    std::vector<std::string> files;
};

// Written atomically (temp file + rename).
void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace rmhd
