#include "rmhd/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rmhd/presets.hpp"

namespace rmhd {

double DyadicProfile::chi(double r) const {
    r = std::abs(r);
    if (r <= 1.1) return 1.0;
    if (r >= 1.9) return 0.0;
    const double t = (r - 1.1) / 0.8;
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

int besov_jmax(const GridSpec& g) {
    return static_cast<int>(std::floor(std::log2(g.n / 3.0)));
}

ScalarField cutoff_Sj(const ScalarField& f, int j, const DyadicProfile& prof) {
    if (j < 0) throw BoundsError("cutoff_Sj: j must be >= 0");
    const double scale = std::ldexp(1.0, -j);
    return apply_radial_multiplier(f, [&prof, scale](double k) { return prof.chi(scale * k); });
}

ScalarField block_Dj(const ScalarField& f, int j, const DyadicProfile& prof) {
    if (j < -1) throw BoundsError("block_Dj: j must be >= -1");
    if (j == -1)
        return apply_radial_multiplier(f, [&prof](double k) { return prof.chi(k); });
    const double scale = std::ldexp(1.0, -j);
    return apply_radial_multiplier(f, [&prof, scale](double k) { return prof.phi(scale * k); });
}

SpectralScalar sharp_cutoff_Aj(const SpectralScalar& s, int j) {
    if (j < 1) throw BoundsError("sharp_cutoff_Aj: j must be >= 1");
    SpectralScalar out = s;
    const int n = out.grid.n;
    const double j2 = static_cast<double>(j) * j;
    for (int iy = 0; iy < n; ++iy) {
        const double my = fft_mode(iy, n);
        for (int ix = 0; ix < n; ++ix) {
            const double mx = fft_mode(ix, n);
            if (mx * mx + my * my > j2) out.modes[static_cast<size_t>(iy) * n + ix] = 0.0;
        }
    }
    return out;
}

ScalarField sharp_cutoff_Aj(const ScalarField& f, int j) {
    return inverse(sharp_cutoff_Aj(transform(f), j));
}

VectorField sharp_cutoff_Aj(const VectorField& v, int j) {
    VectorField out;
    out.x = sharp_cutoff_Aj(v.x, j);
    out.y = sharp_cutoff_Aj(v.y, j);
    return out;
}

double besov_norm(const ScalarField& f, const BesovIndex& idx, const DyadicProfile& prof) {
    if (idx.p < 1.0 || idx.r < 1.0) throw BoundsError("besov_norm: p, r must be >= 1");
    const int jmax = besov_jmax(f.grid);
    double acc = 0.0;
    for (int j = -1; j <= jmax; ++j) {
        const double term = std::pow(2.0, j * idx.s) * lp_norm(block_Dj(f, j, prof), idx.p);
        if (std::isinf(idx.r))
            acc = std::max(acc, term);
        else
            acc += std::pow(term, idx.r);
    }
    return std::isinf(idx.r) ? acc : std::pow(acc, 1.0 / idx.r);
}

ScalarField paraproduct(const ScalarField& u, const ScalarField& v, const DyadicProfile& prof) {
    check_same_grid(u.grid, v.grid);
    const int jmax = besov_jmax(u.grid);
    ScalarField out(u.grid);
    // T_u(v) = sum_{j>=1} S_{j-1}u Delta_j v  (S_{j-1} needs j-1 >= 0)
    for (int j = 1; j <= jmax; ++j) {
        ScalarField low = cutoff_Sj(u, j - 1, prof);
        ScalarField blk = block_Dj(v, j, prof);
        axpy(1.0, multiply(low, blk), out);
    }
    return out;
}

ScalarField remainder(const ScalarField& u, const ScalarField& v, const DyadicProfile& prof) {
    check_same_grid(u.grid, v.grid);
    const int jmax = besov_jmax(u.grid);
    // Everything the two paraproducts miss:
    //   R = sum over pairs (j, j') with |j - j'| <= 1, plus the block pairs
    //   involving S_{j-1} truncation at the low end. Computing it as
    //   u v - T_u(v) - T_v(u) would be circular for the reconstruction
    //   test, so accumulate block pairs directly.
    std::vector<ScalarField> bu, bv;
    bu.reserve(jmax + 2);
    bv.reserve(jmax + 2);
    for (int j = -1; j <= jmax; ++j) {
        bu.push_back(block_Dj(u, j, prof));
        bv.push_back(block_Dj(v, j, prof));
    }
    // Residual blocks of the truncated LP sum (modes above the last block).
    ScalarField ru = u, rv = v;
    for (const auto& b : bu) ru = ru - b;
    for (const auto& b : bv) rv = rv - b;
    bu.push_back(ru);
    bv.push_back(rv);

    const int m = static_cast<int>(bu.size());  // index i holds block j = i - 1
    ScalarField out(u.grid);
    for (int i = 0; i < m; ++i) {
        for (int i2 = 0; i2 < m; ++i2) {
            // Pairs not covered by either paraproduct: T_u(v) covers
            // (low blocks of u with index <= j-2) x (Delta_j v) for j >= 1,
            // i.e. pairs with j' <= j - 2 and j >= 1; symmetrically for T_v(u).
            const int j = i - 1, j2 = i2 - 1;
            const bool in_Tu = (j2 <= j - 2) && (j >= 1) && (j <= jmax);
            const bool in_Tv = (j <= j2 - 2) && (j2 >= 1) && (j2 <= jmax);
            if (in_Tu || in_Tv) continue;
            axpy(1.0, multiply(bu[static_cast<size_t>(i)], bv[static_cast<size_t>(i2)]), out);
        }
    }
    return out;
}

ScalarField commutator_Sj(const ScalarField& f, const ScalarField& g, int j,
                          const DyadicProfile& prof) {
    check_same_grid(f.grid, g.grid);
    ScalarField fg = multiply(f, g);
    return cutoff_Sj(fg, j, prof) - multiply(f, cutoff_Sj(g, j, prof));
}

std::string ProbeReport::to_json() const {
    nlohmann::json j;
    j["kind"] = kind;
    j["samples"] = samples;
    j["seed"] = seed;
    j["max_ratio"] = max_ratio;
    j["mean_ratio"] = mean_ratio;
    j["violations"] = violations;
    return j.dump(2);
}

namespace {

// Annulus-supported field for the Bernstein probe.
ScalarField annulus_field(const ScalarField& base, double r, double R) {
    return apply_radial_multiplier(base, [r, R](double k) { return (k >= r && k <= R) ? 1.0 : 0.0; });
}

}  // namespace

ProbeReport inequality_probe(InequalityKind kind, int samples, std::uint64_t seed,
                             const GridSpec& grid) {
    if (samples < 1) throw BoundsError("inequality_probe: samples must be >= 1");
    ProbeReport rep;
    rep.samples = samples;
    rep.seed = seed;
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) {
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
        ScalarField f = random_smooth_scalar(grid, s, grid.max_mode() / 2, 1.0);
        double ratio = 0.0;
        switch (kind) {
            case InequalityKind::gagliardo_nirenberg: {
                rep.kind = "gagliardo_nirenberg";
                // d = 2, p = 4: ||f||_L4 <= ||f||_L2^{1/2} ||grad f||_L2^{1/2}
                const double denom = std::sqrt(l2_norm(f)) * std::sqrt(l2_norm(gradient(f)));
                ratio = lp_norm(f, 4.0) / denom;
                break;
            }
            case InequalityKind::linfty_interp: {
                rep.kind = "linfty_interp";
                // d = 2, s = 2: ||f||_Linf <= C ||f||_L2^{1/2} ||lap f||_L2^{1/2}
                const double denom = std::sqrt(l2_norm(f)) * std::sqrt(l2_norm(laplacian(f)));
                ratio = max_abs(f) / denom;
                break;
            }
            case InequalityKind::bernstein: {
                rep.kind = "bernstein";
                // Annulus r <= |k| <= R: ||grad f||_L2 / ||f||_L2 must land in [r, R].
                const double r = 4.0, R = 8.0;
                ScalarField a = annulus_field(f, r, R);
                ratio = l2_norm(gradient(a)) / (l2_norm(a) * r);  // normalized lower edge
                break;
            }
        }
        if (!std::isfinite(ratio)) {
            ++rep.violations;
            continue;
        }
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        sum += ratio;
    }
    const int ok = samples - rep.violations;
    rep.mean_ratio = ok > 0 ? sum / ok : 0.0;
    return rep;
}

}  // namespace rmhd
