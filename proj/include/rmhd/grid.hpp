#pragma once

#include <cmath>
#include <numbers>

#include "rmhd/errors.hpp"

namespace rmhd {

// Uniform periodic grid on [0, length)^2 with n points per dimension.
struct GridSpec {
    int n = 64;
    double length = 2.0 * std::numbers::pi;

    bool operator==(const GridSpec&) const = default;

    double h() const { return length / n; }
    // Smallest physical wavenumber; integer mode m has wavenumber k0()*m.
    double k0() const { return 2.0 * std::numbers::pi / length; }
    // 2/3-rule cutoff: integer modes with max(|m1|,|m2|) > max_mode() are aliased.
    int max_mode() const { return n / 3; }
};

inline void validate(const GridSpec& g) {
    if (g.n < 16 || g.n % 2 != 0)
        throw BoundsError("grid.n must be an even integer >= 16");
    if (!(g.length > 0.0) || !std::isfinite(g.length))
        throw BoundsError("grid.length must be a positive real");
}

// Signed integer mode for storage index i in an n-point FFT.
inline int fft_mode(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace rmhd
