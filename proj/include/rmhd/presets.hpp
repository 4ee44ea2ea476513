#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmhd/dynamics.hpp"

namespace rmhd {

// Deterministic per-sample stream: mixes (seed, index) into a fresh state.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Smooth random scalar with modes in 1 <= |m| <= band, zero mean,
// normalized to the given max amplitude. Deterministic in seed.
ScalarField random_smooth_scalar(const GridSpec& g, std::uint64_t seed, int band, double amplitude);

// Divergence-free, zero-mean random vector field (perp-gradient of a random
// stream function), normalized to the given max amplitude.
VectorField random_divfree_vector(const GridSpec& g, std::uint64_t seed, int band, double amplitude);

struct InitialDataPreset {
    enum class Kind { taylor_green, random_bandlimited, quasi_homog, nonhomog };
    Kind kind = Kind::taylor_green;
    std::string name = "taylor_green";
    std::uint64_t seed = 0;
    int band = 4;
    double amplitude = 1.0;    // velocity scale
    double b_amplitude = 0.5;  // magnetic scale
    double r_amplitude = 0.5;  // density-oscillation scale (quasi_homog / random)
    // nonhomog reference profile rho0 = 1 + rho0_amplitude * sin(x) sin(y)
    double rho0_amplitude = 0.5;
};

ScalarField reference_density(const InitialDataPreset& preset, const GridSpec& g);

PrimitiveState make_primitive_data(const InitialDataPreset& preset, const GridSpec& g,
                                   const PhysParams& params);
LimitState make_limit_data(const InitialDataPreset& preset, const GridSpec& g);

// Fraction of grid points with |grad rho0| <= delta, per delta.
std::vector<double> ndcp_probe(const ScalarField& rho0, const std::vector<double>& deltas);

}  // namespace rmhd
