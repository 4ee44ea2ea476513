#include "rmhd/presets.hpp"

#include <cmath>
#include <random>

namespace rmhd {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over the combined word
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// Random Hermitian-symmetric spectrum over 1 <= max(|m1|,|m2|) <= band with
// a mild decay, inverted to a real field.
SpectralScalar random_spectrum(const GridSpec& g, std::uint64_t seed, int band) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralScalar s(g);
    band = std::min(band, g.max_mode());
    for (int my = -band; my <= band; ++my) {
        for (int mx = -band; mx <= band; ++mx) {
            if (mx == 0 && my == 0) continue;
            const double re = gauss(rng), im = gauss(rng);
            const double decay = 1.0 / (1.0 + mx * mx + my * my);
            const int ix = (mx + g.n) % g.n;
            const int iy = (my + g.n) % g.n;
            s.at(ix, iy) = decay * std::complex<double>(re, im);
        }
    }
    // Symmetrize so the inverse transform is real.
    SpectralScalar sym(g);
    for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix) {
            const int jx = (g.n - ix) % g.n;
            const int jy = (g.n - iy) % g.n;
            sym.at(ix, iy) = 0.5 * (s.at(ix, iy) + std::conj(s.at(jx, jy)));
        }
    }
    return sym;
}

void normalize_max(ScalarField& f, double amplitude) {
    const double m = max_abs(f);
    if (m == 0.0) return;
    for (double& v : f.values) v *= amplitude / m;
}

}  // namespace

ScalarField random_smooth_scalar(const GridSpec& g, std::uint64_t seed, int band,
                                 double amplitude) {
    ScalarField f = inverse(random_spectrum(g, seed, band));
    normalize_max(f, amplitude);
    return f;
}

VectorField random_divfree_vector(const GridSpec& g, std::uint64_t seed, int band,
                                  double amplitude) {
    ScalarField psi = inverse(random_spectrum(g, seed, band));
    VectorField v = perp_gradient(psi);
    const double m = max_abs(v);
    if (m > 0.0) {
        for (double& x : v.x.values) x *= amplitude / m;
        for (double& y : v.y.values) y *= amplitude / m;
    }
    return v;
}

ScalarField reference_density(const InitialDataPreset& preset, const GridSpec& g) {
    if (preset.kind == InitialDataPreset::Kind::nonhomog) {
        const double a = preset.rho0_amplitude;
        return sample(g, [a](double x, double y) { return 1.0 + a * std::sin(x) * std::sin(y); });
    }
    ScalarField ones(g);
    for (double& v : ones.values) v = 1.0;
    return ones;
}

namespace {

void fill_velocity_and_field(const InitialDataPreset& p, const GridSpec& g, VectorField& u,
                             VectorField& b, ScalarField& r) {
    switch (p.kind) {
        case InitialDataPreset::Kind::taylor_green:
            u.x = sample(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
            u.y = sample(g, [](double x, double y) { return -std::sin(x) * std::cos(y); });
            b = VectorField(g);
            r = ScalarField(g);
            break;
        case InitialDataPreset::Kind::random_bandlimited:
        case InitialDataPreset::Kind::quasi_homog:
        case InitialDataPreset::Kind::nonhomog:
            u = random_divfree_vector(g, derive_seed(p.seed, 1), p.band, p.amplitude);
            b = random_divfree_vector(g, derive_seed(p.seed, 2), p.band, p.b_amplitude);
            r = random_smooth_scalar(g, derive_seed(p.seed, 3), p.band, p.r_amplitude);
            break;
    }
}

}  // namespace

PrimitiveState make_primitive_data(const InitialDataPreset& preset, const GridSpec& g,
                                   const PhysParams& params) {
    validate(g);
    params.validate();
    PrimitiveState state(g);
    ScalarField r;
    fill_velocity_and_field(preset, g, state.u, state.b, r);
    ScalarField rho0 = reference_density(preset, g);
    state.rho = rho0;
    axpy(params.epsilon, r, state.rho);
    state.u = dealias(leray_project(state.u));
    state.b = dealias(leray_project(state.b));
    state.rho = dealias(state.rho);

    const double lo = min_value(state.rho);
    if (lo < params.rho_min)
        throw PresetInvalid("preset density violates the rho_min floor");
    if (max_abs(state.rho) > 2.0 * params.rho_star)
        throw PresetInvalid("preset density violates the 2*rho_star ceiling");

    if (preset.kind == InitialDataPreset::Kind::nonhomog) {
        // Reject profiles whose critical-point set has non-vanishing measure.
        auto curve = ndcp_probe(rho0, {0.2, 0.1, 0.05, 0.025});
        if (curve.back() > 0.5)
            throw PresetInvalid("nonhomog reference density fails the critical-point probe");
    }
    return state;
}

LimitState make_limit_data(const InitialDataPreset& preset, const GridSpec& g) {
    validate(g);
    LimitState state(g);
    fill_velocity_and_field(preset, g, state.u, state.b, state.r);
    state.u = dealias(leray_project(state.u));
    state.b = dealias(leray_project(state.b));
    state.r = dealias(state.r);
    return state;
}

std::vector<double> ndcp_probe(const ScalarField& rho0, const std::vector<double>& deltas) {
    VectorField grad = gradient(rho0);
    std::vector<double> out;
    out.reserve(deltas.size());
    for (double delta : deltas) {
        size_t count = 0;
        for (size_t i = 0; i < grad.x.values.size(); ++i) {
            const double mag = std::hypot(grad.x.values[i], grad.y.values[i]);
            if (mag <= delta) ++count;
        }
        out.push_back(static_cast<double>(count) / static_cast<double>(grad.x.values.size()));
    }
    return out;
}

}  // namespace rmhd
