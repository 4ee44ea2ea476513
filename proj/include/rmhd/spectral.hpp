#pragma once

#include <functional>

#include "rmhd/field.hpp"

namespace rmhd {

// Forward/backward FFT. inverse(transform(f)) == f to round-off.
SpectralScalar transform(const ScalarField& f);
ScalarField inverse(const SpectralScalar& s);
SpectralVector transform(const VectorField& v);
VectorField inverse(const SpectralVector& s);

// Exact spectral derivatives (Nyquist modes zeroed).
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);
ScalarField curl2d(const VectorField& v);  // d_x v_y - d_y v_x
VectorField perp(const VectorField& v);    // (-v_y, v_x)
VectorField perp_gradient(const ScalarField& f);

SpectralVector gradient(const SpectralScalar& f);
SpectralScalar divergence(const SpectralVector& v);
SpectralScalar laplacian_spec(const SpectralScalar& f);
SpectralScalar curl2d(const SpectralVector& v);

// L^2-orthogonal projection onto divergence-free fields; identity on the mean mode.
VectorField leray_project(const VectorField& v);
SpectralVector leray_project(const SpectralVector& v);

// 2/3-rule: zero modes with max(|m1|,|m2|) > n/3. Idempotent.
SpectralScalar dealias(const SpectralScalar& s);
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

// Pointwise product followed by the 2/3-rule mask.
ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b);

// Solve laplacian(result) = f with zero-mean result. If require_zero_mean,
// a nonzero mean of f raises MeanNotZero; otherwise the mean is discarded.
ScalarField poisson_solve(const ScalarField& f, bool require_zero_mean = true);

// Apply a real radial Fourier multiplier m(|k|), |k| the physical wavenumber.
ScalarField apply_radial_multiplier(const ScalarField& f, const std::function<double(double)>& m);
SpectralScalar apply_radial_multiplier(const SpectralScalar& s, const std::function<double(double)>& m);

// Parseval-based Sobolev norm: sqrt(L^2 sum (1+|k|^2)^s |f_hat|^2).
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const VectorField& v, double s);

namespace test_hooks {
// Fault-injection switch used by the invariant suite: perturbs the Leray
// symbol so that the divergence invariant must fail.
extern bool corrupt_leray_symbol;
}  // namespace test_hooks

}  // namespace rmhd
