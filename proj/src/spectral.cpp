#include "rmhd/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace rmhd {

namespace test_hooks {
bool corrupt_leray_symbol = false;
}

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Plan creation is not thread-safe; execution with new arrays is. Plans are
// created FFTW_UNALIGNED so they accept arbitrary caller buffers.
PlanPair& plans_for(int n) {
    static std::mutex mtx;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> buf(static_cast<size_t>(n) * n);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_2d(n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_2d(n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(n, pp).first->second;
}

void execute(fftw_plan plan, std::vector<std::complex<double>>& data) {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

// Loop over modes with their physical wavenumbers.
template <typename F>
void for_modes(SpectralScalar& s, F&& f) {
    const int n = s.grid.n;
    const double k0 = s.grid.k0();
    for (int iy = 0; iy < n; ++iy) {
        const double ky = k0 * fft_mode(iy, n);
        for (int ix = 0; ix < n; ++ix) {
            const double kx = k0 * fft_mode(ix, n);
            f(s.modes[static_cast<size_t>(iy) * n + ix], kx, ky, fft_mode(ix, n), fft_mode(iy, n));
        }
    }
}

constexpr std::complex<double> kI{0.0, 1.0};

// Nyquist derivative symbol is zeroed (|m| == n/2; fft_mode maps the
// Nyquist index to +n/2).
bool nyquist(int mx, int my, int n) { return std::abs(mx) == n / 2 || std::abs(my) == n / 2; }

}  // namespace

SpectralScalar transform(const ScalarField& f) {
    check_finite(f);
    SpectralScalar out(f.grid);
    for (size_t i = 0; i < f.values.size(); ++i) out.modes[i] = f.values[i];
    execute(plans_for(f.grid.n).fwd, out.modes);
    const double scale = 1.0 / (static_cast<double>(f.grid.n) * f.grid.n);
    for (auto& m : out.modes) m *= scale;
    return out;
}

ScalarField inverse(const SpectralScalar& s) {
    std::vector<std::complex<double>> buf = s.modes;
    execute(plans_for(s.grid.n).bwd, buf);
    ScalarField out(s.grid);
    for (size_t i = 0; i < buf.size(); ++i) out.values[i] = buf[i].real();
    check_finite(out);
    return out;
}

SpectralVector transform(const VectorField& v) {
    check_same_grid(v.x.grid, v.y.grid);
    SpectralVector out;
    out.x = transform(v.x);
    out.y = transform(v.y);
    return out;
}

VectorField inverse(const SpectralVector& s) {
    VectorField out;
    out.x = inverse(s.x);
    out.y = inverse(s.y);
    return out;
}

SpectralVector gradient(const SpectralScalar& f) {
    SpectralVector out(f.grid);
    const int n = f.grid.n;
    out.x = f;
    out.y = f;
    for_modes(out.x, [n](std::complex<double>& m, double kx, double, int mx, int my) {
        m *= nyquist(mx, my, n) ? 0.0 : kI * kx;
    });
    for_modes(out.y, [n](std::complex<double>& m, double, double ky, int mx, int my) {
        m *= nyquist(mx, my, n) ? 0.0 : kI * ky;
    });
    return out;
}

SpectralScalar divergence(const SpectralVector& v) {
    SpectralScalar out(v.grid());
    const int n = out.grid.n;
    SpectralScalar dx = v.x, dy = v.y;
    for_modes(dx, [n](std::complex<double>& m, double kx, double, int mx, int my) {
        m *= nyquist(mx, my, n) ? 0.0 : kI * kx;
    });
    for_modes(dy, [n](std::complex<double>& m, double, double ky, int mx, int my) {
        m *= nyquist(mx, my, n) ? 0.0 : kI * ky;
    });
    for (size_t i = 0; i < out.modes.size(); ++i) out.modes[i] = dx.modes[i] + dy.modes[i];
    return out;
}

SpectralScalar laplacian_spec(const SpectralScalar& f) {
    SpectralScalar out = f;
    const int n = f.grid.n;
    for_modes(out, [n](std::complex<double>& m, double kx, double ky, int mx, int my) {
        m *= nyquist(mx, my, n) ? 0.0 : -(kx * kx + ky * ky);
    });
    return out;
}

SpectralScalar curl2d(const SpectralVector& v) {
    SpectralScalar out(v.grid());
    const int n = out.grid.n;
    SpectralScalar dxvy = v.y, dyvx = v.x;
    for_modes(dxvy, [n](std::complex<double>& m, double kx, double, int mx, int my) {
        m *= nyquist(mx, my, n) ? 0.0 : kI * kx;
    });
    for_modes(dyvx, [n](std::complex<double>& m, double, double ky, int mx, int my) {
        m *= nyquist(mx, my, n) ? 0.0 : kI * ky;
    });
    for (size_t i = 0; i < out.modes.size(); ++i) out.modes[i] = dxvy.modes[i] - dyvx.modes[i];
    return out;
}

VectorField gradient(const ScalarField& f) { return inverse(gradient(transform(f))); }

ScalarField divergence(const VectorField& v) { return inverse(divergence(transform(v))); }

ScalarField laplacian(const ScalarField& f) { return inverse(laplacian_spec(transform(f))); }

VectorField laplacian(const VectorField& v) {
    VectorField out;
    out.x = laplacian(v.x);
    out.y = laplacian(v.y);
    return out;
}

ScalarField curl2d(const VectorField& v) { return inverse(curl2d(transform(v))); }

VectorField perp(const VectorField& v) {
    check_same_grid(v.x.grid, v.y.grid);
    VectorField out;
    out.x = -1.0 * v.y;
    out.y = v.x;
    return out;
}

VectorField perp_gradient(const ScalarField& f) { return perp(gradient(f)); }

SpectralVector leray_project(const SpectralVector& v) {
    SpectralVector out = v;
    const int n = out.grid().n;
    const double bias = test_hooks::corrupt_leray_symbol ? 0.05 : 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const int my = fft_mode(iy, n);
        const double ky = my;
        for (int ix = 0; ix < n; ++ix) {
            const int mx = fft_mode(ix, n);
            const double kx = mx;
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;  // mean mode left untouched
            // identity on Nyquist lines: the wavevector sign is ambiguous
            // there and the derivative symbols vanish anyway
            if (nyquist(mx, my, n)) continue;
            const size_t i = static_cast<size_t>(iy) * n + ix;
            const std::complex<double> kdotv = kx * out.x.modes[i] + ky * out.y.modes[i];
            const std::complex<double> factor = kdotv / k2 * (1.0 - bias);
            out.x.modes[i] -= kx * factor;
            out.y.modes[i] -= ky * factor;
        }
    }
    return out;
}

VectorField leray_project(const VectorField& v) { return inverse(leray_project(transform(v))); }

SpectralScalar dealias(const SpectralScalar& s) {
    SpectralScalar out = s;
    const int n = out.grid.n;
    const int kmax = out.grid.max_mode();
    for (int iy = 0; iy < n; ++iy) {
        const int my = std::abs(fft_mode(iy, n));
        for (int ix = 0; ix < n; ++ix) {
            const int mx = std::abs(fft_mode(ix, n));
            if (mx > kmax || my > kmax) out.modes[static_cast<size_t>(iy) * n + ix] = 0.0;
        }
    }
    return out;
}

ScalarField dealias(const ScalarField& f) { return inverse(dealias(transform(f))); }

VectorField dealias(const VectorField& v) {
    VectorField out;
    out.x = dealias(v.x);
    out.y = dealias(v.y);
    return out;
}

ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b) {
    return dealias(multiply(a, b));
}

ScalarField poisson_solve(const ScalarField& f, bool require_zero_mean) {
    SpectralScalar s = transform(f);
    const double m0 = std::abs(s.modes[0]);
    if (require_zero_mean) {
        double scale = 0.0;
        for (const auto& m : s.modes) scale = std::max(scale, std::abs(m));
        if (m0 > 1e-12 * std::max(scale, 1.0)) throw MeanNotZero("poisson_solve: source has nonzero mean");
    }
    s.modes[0] = 0.0;
    const int n = s.grid.n;
    for_modes(s, [n](std::complex<double>& m, double kx, double ky, int mx, int my) {
        const double k2 = kx * kx + ky * ky;
        if (k2 == 0.0) return;
        m *= nyquist(mx, my, n) ? 0.0 : -1.0 / k2;
    });
    return inverse(s);
}

SpectralScalar apply_radial_multiplier(const SpectralScalar& s,
                                       const std::function<double(double)>& m) {
    SpectralScalar out = s;
    for_modes(out, [&m](std::complex<double>& c, double kx, double ky, int, int) {
        c *= m(std::hypot(kx, ky));
    });
    return out;
}

ScalarField apply_radial_multiplier(const ScalarField& f, const std::function<double(double)>& m) {
    return inverse(apply_radial_multiplier(transform(f), m));
}

double sobolev_norm(const ScalarField& f, double s) {
    SpectralScalar sp = transform(f);
    double sum = 0.0;
    for_modes(sp, [&sum, s](std::complex<double>& m, double kx, double ky, int, int) {
        sum += std::pow(1.0 + kx * kx + ky * ky, s) * std::norm(m);
    });
    return std::sqrt(sum) * f.grid.length;
}

double sobolev_norm(const VectorField& v, double s) {
    const double nx = sobolev_norm(v.x, s);
    const double ny = sobolev_norm(v.y, s);
    return std::sqrt(nx * nx + ny * ny);
}

}  // namespace rmhd
