#include "rmhd/io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rmhd {

const std::vector<std::string> kTimeseriesColumns = {
    "time",       "kinetic_energy",       "magnetic_energy", "viscous_dissipation",
    "resistive_dissipation", "div_u_norm", "div_b_norm",     "r_l2",
    "r_l4",       "r_linf",               "sigma_sobolev_proxy", "rho0u_constraint"};

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw IoError("snapshot truncated");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

double read_f64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw IoError("snapshot truncated");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

std::string timeseries_header() {
    std::string out;
    for (size_t i = 0; i < kTimeseriesColumns.size(); ++i) {
        if (i) out += ',';
        out += kTimeseriesColumns[i];
    }
    return out;
}

std::string timeseries_row(const DiagnosticsRecord& rec) {
    const double vals[] = {rec.time,
                           rec.kinetic_energy,
                           rec.magnetic_energy,
                           rec.viscous_dissipation,
                           rec.resistive_dissipation,
                           rec.div_u_norm,
                           rec.div_b_norm,
                           rec.r_l2,
                           rec.r_l4,
                           rec.r_linf,
                           rec.sigma_sobolev_proxy,
                           rec.rho0u_constraint};
    std::string out;
    for (size_t i = 0; i < std::size(vals); ++i) {
        if (i) out += ',';
        out += fmt17(vals[i]);
    }
    return out;
}

void write_timeseries(const std::vector<DiagnosticsRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open timeseries file for writing: " + path);
    out << timeseries_header() << '\n';
    for (const auto& rec : records) out << timeseries_row(rec) << '\n';
    if (!out) throw IoError("failed writing timeseries: " + path);
}

void write_snapshot(const FieldSnapshot& snap, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open snapshot file for writing: " + path);
    out.write("RMHD1", 5);
    write_u32(out, static_cast<std::uint32_t>(snap.grid.n));
    write_f64(out, snap.grid.length);
    write_f64(out, snap.time);
    write_u32(out, static_cast<std::uint32_t>(snap.fields.size()));
    for (const auto& [name, field] : snap.fields) {
        check_same_grid(snap.grid, field.grid);
        write_u32(out, static_cast<std::uint32_t>(name.size()));
        out.write(name.data(), static_cast<std::streamsize>(name.size()));
        for (double v : field.values) write_f64(out, v);
    }
    if (!out) throw IoError("failed writing snapshot: " + path);
}

FieldSnapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot file: " + path);
    char magic[5];
    in.read(magic, 5);
    if (!in || std::memcmp(magic, "RMHD1", 5) != 0)
        throw IoError("bad snapshot magic in " + path);
    FieldSnapshot snap;
    snap.grid.n = static_cast<int>(read_u32(in));
    snap.grid.length = read_f64(in);
    validate(snap.grid);
    snap.time = read_f64(in);
    const std::uint32_t nfields = read_u32(in);
    if (nfields > 64) throw IoError("snapshot field count is implausible");
    for (std::uint32_t i = 0; i < nfields; ++i) {
        const std::uint32_t len = read_u32(in);
        if (len > 256) throw IoError("snapshot field name is implausibly long");
        std::string name(len, '\0');
        in.read(name.data(), len);
        if (!in) throw IoError("snapshot truncated");
        ScalarField f(snap.grid);
        for (double& v : f.values) v = read_f64(in);
        snap.fields.emplace_back(std::move(name), std::move(f));
    }
    return snap;
}

FieldSnapshot snapshot_of(const PrimitiveState& state) {
    FieldSnapshot snap;
    snap.grid = state.grid();
    snap.time = state.time;
    snap.fields = {{"rho", state.rho}, {"ux", state.u.x}, {"uy", state.u.y},
                   {"bx", state.b.x},  {"by", state.b.y}};
    return snap;
}

FieldSnapshot snapshot_of(const LimitState& state) {
    FieldSnapshot snap;
    snap.grid = state.grid();
    snap.time = state.time;
    snap.fields = {{"r", state.r},    {"ux", state.u.x}, {"uy", state.u.y},
                   {"bx", state.b.x}, {"by", state.b.y}};
    return snap;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    nlohmann::json j;
    j["config_hash"] = manifest.config_hash;
    j["version"] = manifest.version;
    j["status"] = manifest.status;
    j["wall_clock_seconds"] = manifest.wall_clock_seconds;
    j["files"] = manifest.files;

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw IoError("cannot open manifest temp file: " + tmp);
        out << j.dump(2) << '\n';
        if (!out) throw IoError("failed writing manifest temp file: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move manifest into place: " + ec.message());
}

}  // namespace rmhd
