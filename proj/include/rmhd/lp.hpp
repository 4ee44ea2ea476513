#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmhd/spectral.hpp"

namespace rmhd {

// Radial cutoff pair defining the dyadic decomposition. chi is a concrete
// C^1 bump: 1 on [0, 1.1], a smooth step on [1.1, 1.9], 0 on [1.9, inf).
// phi(r) = chi(r/2) - chi(r), so that chi(r) + sum_{j>=0} phi(2^-j r) = 1
// by telescoping and S_j = sum_{k<=j-1} Delta_k holds exactly.
struct DyadicProfile {
    double chi(double r) const;
    double phi(double r) const { return chi(0.5 * r) - chi(r); }
};

struct BesovIndex {
    double s = 0.0;
    double p = 2.0;  // in [1, inf]
    double r = 2.0;  // in [1, inf]
};

// Highest meaningful block index on the grid.
int besov_jmax(const GridSpec& g);

// Low-frequency cutoff S_j = chi(2^-j |D|), j >= 0.
ScalarField cutoff_Sj(const ScalarField& f, int j, const DyadicProfile& prof = {});

// Dyadic block: Delta_{-1} = chi(|D|), Delta_j = phi(2^-j |D|) for j >= 0,
// i.e. Delta_j = S_{j+1} - S_j.
ScalarField block_Dj(const ScalarField& f, int j, const DyadicProfile& prof = {});

// Sharp spectral ball projection: zero all modes with |k| > j.
ScalarField sharp_cutoff_Aj(const ScalarField& f, int j);
VectorField sharp_cutoff_Aj(const VectorField& v, int j);
SpectralScalar sharp_cutoff_Aj(const SpectralScalar& s, int j);

// l^r over j of 2^{js} ||Delta_j f||_{L^p}, blocks truncated at besov_jmax.
double besov_norm(const ScalarField& f, const BesovIndex& idx, const DyadicProfile& prof = {});

// Bony decomposition u*v = T_u(v) + T_v(u) + R(u,v); products are exact
// (no dealiasing) so the reconstruction identity holds on resolved bands.
ScalarField paraproduct(const ScalarField& u, const ScalarField& v, const DyadicProfile& prof = {});
ScalarField remainder(const ScalarField& u, const ScalarField& v, const DyadicProfile& prof = {});

// [S_j, f] g = S_j(f g) - f S_j(g).
ScalarField commutator_Sj(const ScalarField& f, const ScalarField& g, int j,
                          const DyadicProfile& prof = {});

enum class InequalityKind { bernstein, gagliardo_nirenberg, linfty_interp };

struct ProbeReport {
    std::string kind;
    int samples = 0;
    std::uint64_t seed = 0;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    int violations = 0;

    std::string to_json() const;
};

// Empirical constants of the classical inequalities over seeded random
// fields; violations counts non-finite ratios only.
ProbeReport inequality_probe(InequalityKind kind, int samples, std::uint64_t seed,
                             const GridSpec& grid = {});

}  // namespace rmhd
