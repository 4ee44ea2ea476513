#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "rmhd/grid.hpp"

namespace rmhd {

// Real samples on the grid, row-major with x fastest: values[iy*n + ix].
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : grid(g), values(static_cast<size_t>(g.n) * g.n, 0.0) {}

    double& at(int ix, int iy) { return values[static_cast<size_t>(iy) * grid.n + ix]; }
    double at(int ix, int iy) const { return values[static_cast<size_t>(iy) * grid.n + ix]; }
};

struct VectorField {
    ScalarField x, y;

    VectorField() = default;
    explicit VectorField(const GridSpec& g) : x(g), y(g) {}
    const GridSpec& grid() const { return x.grid; }
};

// Complex Fourier coefficients, same layout; index (ix,iy) holds the
// coefficient of integer wavevector (fft_mode(ix,n), fft_mode(iy,n)).
// Forward transform divides by n^2, so modes[0] is the field mean.
struct SpectralScalar {
    GridSpec grid;
    std::vector<std::complex<double>> modes;

    SpectralScalar() = default;
    explicit SpectralScalar(const GridSpec& g)
        : grid(g), modes(static_cast<size_t>(g.n) * g.n, std::complex<double>(0.0, 0.0)) {}

    std::complex<double>& at(int ix, int iy) { return modes[static_cast<size_t>(iy) * grid.n + ix]; }
    std::complex<double> at(int ix, int iy) const { return modes[static_cast<size_t>(iy) * grid.n + ix]; }
};

struct SpectralVector {
    SpectralScalar x, y;

    SpectralVector() = default;
    explicit SpectralVector(const GridSpec& g) : x(g), y(g) {}
    const GridSpec& grid() const { return x.grid; }
};

inline void check_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw GridMismatch("operands live on different grids");
}

void check_finite(const ScalarField& f);
void check_finite(const VectorField& v);

// Pointwise arithmetic; all operands must share the grid.
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double c, const ScalarField& a);
ScalarField multiply(const ScalarField& a, const ScalarField& b);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double c, const VectorField& a);
void axpy(double a, const ScalarField& x, ScalarField& y);  // y += a*x
void axpy(double a, const VectorField& x, VectorField& y);

double mean(const ScalarField& f);
double min_value(const ScalarField& f);
double max_abs(const ScalarField& f);
double max_abs(const VectorField& v);

// Continuum norms by trapezoidal (here: exact periodic) quadrature.
double inner_l2(const ScalarField& a, const ScalarField& b);
double inner_l2(const VectorField& a, const VectorField& b);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);
double lp_norm(const ScalarField& f, double p);  // p = INFINITY gives the max norm

// Fill from an analytic function of (x, y).
ScalarField sample(const GridSpec& g, const std::function<double(double, double)>& fn);

}  // namespace rmhd
