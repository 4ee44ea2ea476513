#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rmhd/presets.hpp"
#include "rmhd/spectral.hpp"

using namespace rmhd;

namespace {
const GridSpec g64{64};

double rel(double err, double scale) { return err / scale; }
}  // namespace

TEST_CASE("fft round trip is exact to round-off") {
    ScalarField f = random_smooth_scalar(g64, 11, 20, 1.0);
    ScalarField back = inverse(transform(f));
    CHECK(rel(l2_norm(back - f), l2_norm(f)) < 1e-13);
}

TEST_CASE("forward transform is mean-normalized") {
    ScalarField f = sample(g64, [](double x, double y) { return 3.5 + std::sin(x + 2 * y); });
    SpectralScalar s = transform(f);
    CHECK(std::abs(s.modes[0] - std::complex<double>(3.5, 0.0)) < 1e-13);
}

TEST_CASE("derivatives match analytic values") {
    ScalarField f = sample(g64, [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y); });
    VectorField grad = gradient(f);
    ScalarField gx = sample(g64, [](double x, double y) { return 3 * std::cos(3 * x) * std::cos(2 * y); });
    ScalarField gy = sample(g64, [](double x, double y) { return -2 * std::sin(3 * x) * std::sin(2 * y); });
    CHECK(rel(l2_norm(grad.x - gx), l2_norm(gx)) < 1e-12);
    CHECK(rel(l2_norm(grad.y - gy), l2_norm(gy)) < 1e-12);

    ScalarField lap = laplacian(f);
    CHECK(rel(l2_norm(lap - (-13.0 * f)), 13.0 * l2_norm(f)) < 1e-12);
}

TEST_CASE("laplacian equals div grad") {
    ScalarField f = random_smooth_scalar(g64, 3, 15, 1.0);
    ScalarField lhs = laplacian(f);
    ScalarField rhs = divergence(gradient(f));
    CHECK(rel(l2_norm(lhs - rhs), l2_norm(lhs)) < 1e-12);
}

TEST_CASE("nyquist modes are zeroed by derivative operators") {
    // Alternating field = pure Nyquist mode (n/2); its spectral derivative
    // has no well-defined sign, so the operators must return zero.
    ScalarField f(g64);
    for (int iy = 0; iy < g64.n; ++iy)
        for (int ix = 0; ix < g64.n; ++ix) f.at(ix, iy) = ((ix + iy) % 2 == 0) ? 1.0 : -1.0;
    VectorField grad = gradient(f);
    CHECK(max_abs(grad) < 1e-12);
}

TEST_CASE("dealias removes modes beyond n/3 and is idempotent") {
    ScalarField high = sample(g64, [](double x, double y) { return std::cos(30 * x) + std::sin(22 * y); });
    ScalarField low = sample(g64, [](double x, double y) { return std::cos(5 * x) * std::sin(2 * y); });
    CHECK(max_abs(dealias(high)) < 1e-12);
    CHECK(rel(l2_norm(dealias(low) - low), l2_norm(low)) < 1e-13);
    ScalarField once = dealias(low + high);
    CHECK(rel(l2_norm(dealias(once) - once), l2_norm(low)) < 1e-13);
}

TEST_CASE("leray projector annihilates gradients and fixes div-free fields") {
    ScalarField psi = random_smooth_scalar(g64, 5, 12, 1.0);
    VectorField gradpsi = gradient(psi);
    CHECK(rel(l2_norm(leray_project(gradpsi)), l2_norm(gradpsi)) < 1e-12);

    VectorField w = random_divfree_vector(g64, 6, 12, 1.0);
    CHECK(rel(l2_norm(leray_project(w) - w), l2_norm(w)) < 1e-12);
}

TEST_CASE("leray projection is idempotent, self-adjoint and divergence-free") {
    VectorField v;
    v.x = random_smooth_scalar(g64, 7, 12, 1.0);
    v.y = random_smooth_scalar(g64, 8, 12, 1.0);
    VectorField pv = leray_project(v);
    CHECK(rel(l2_norm(divergence(pv)), l2_norm(v)) < 1e-12);
    CHECK(rel(l2_norm(leray_project(pv) - pv), l2_norm(pv)) < 1e-12);

    VectorField w;
    w.x = random_smooth_scalar(g64, 9, 12, 1.0);
    w.y = random_smooth_scalar(g64, 10, 12, 1.0);
    CHECK(std::abs(inner_l2(leray_project(v), w) - inner_l2(v, leray_project(w))) <
          1e-12 * l2_norm(v) * l2_norm(w));
}

TEST_CASE("leray keeps the mean mode") {
    VectorField v(g64);
    for (double& x : v.x.values) x = 2.0;
    for (double& y : v.y.values) y = -1.0;
    VectorField pv = leray_project(v);
    CHECK(rel(l2_norm(pv - v), l2_norm(v)) < 1e-13);
}

TEST_CASE("corrupt leray hook breaks the divergence invariant") {
    VectorField v;
    v.x = random_smooth_scalar(g64, 21, 12, 1.0);
    v.y = random_smooth_scalar(g64, 22, 12, 1.0);
    test_hooks::corrupt_leray_symbol = true;
    const double div = l2_norm(divergence(leray_project(v)));
    test_hooks::corrupt_leray_symbol = false;
    CHECK(div > 1e-6 * l2_norm(v));
}

TEST_CASE("poisson solve inverts the laplacian on zero-mean data") {
    ScalarField f = random_smooth_scalar(g64, 12, 10, 1.0);
    ScalarField u = poisson_solve(f);
    CHECK(std::abs(mean(u)) < 1e-13);
    CHECK(rel(l2_norm(laplacian(u) - f), l2_norm(f)) < 1e-12);

    ScalarField biased = f;
    for (double& v : biased.values) v += 1.0;
    CHECK_THROWS_AS((void)poisson_solve(biased), MeanNotZero);
}

TEST_CASE("sobolev norm matches closed forms") {
    ScalarField one(g64);
    for (double& v : one.values) v = 1.0;
    const double pi = 3.14159265358979323846;
    CHECK(sobolev_norm(one, 0.0) == doctest::Approx(2 * pi).epsilon(1e-12));
    CHECK(sobolev_norm(one, -2.7) == doctest::Approx(2 * pi).epsilon(1e-12));

    // ||sin x||_{H^s}^2 = (2 pi)^2 * 2^s * 1/2
    ScalarField sx = sample(g64, [](double x, double) { return std::sin(x); });
    for (double s : {0.0, 1.0, -1.0, 2.5}) {
        const double expect = 2 * pi * std::sqrt(std::pow(2.0, s) * 0.5);
        CHECK(sobolev_norm(sx, s) == doctest::Approx(expect).epsilon(1e-12));
    }
    // H^0 agrees with the quadrature L2 norm
    ScalarField f = random_smooth_scalar(g64, 13, 12, 1.0);
    CHECK(sobolev_norm(f, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
}

TEST_CASE("lp norms: p=2 matches l2, p=inf matches max") {
    ScalarField f = random_smooth_scalar(g64, 14, 12, 1.0);
    CHECK(lp_norm(f, 2.0) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
    CHECK(lp_norm(f, INFINITY) == doctest::Approx(max_abs(f)).epsilon(1e-12));
}

TEST_CASE("multiply_dealiased equals multiply then dealias") {
    ScalarField a = random_smooth_scalar(g64, 15, 20, 1.0);
    ScalarField b = random_smooth_scalar(g64, 16, 20, 1.0);
    ScalarField lhs = multiply_dealiased(a, b);
    ScalarField rhs = dealias(multiply(a, b));
    CHECK(rel(l2_norm(lhs - rhs), l2_norm(rhs)) < 1e-12);
}

TEST_CASE("radial multiplier identity") {
    ScalarField f = random_smooth_scalar(g64, 17, 12, 1.0);
    ScalarField same = apply_radial_multiplier(f, [](double) { return 1.0; });
    CHECK(rel(l2_norm(same - f), l2_norm(f)) < 1e-13);
}

TEST_CASE("grid mismatch is rejected") {
    ScalarField a(g64), b(GridSpec{32});
    CHECK_THROWS_AS((void)multiply(a, b), GridMismatch);
}

TEST_CASE("perp and perp_gradient are consistent") {
    ScalarField psi = random_smooth_scalar(g64, 18, 12, 1.0);
    VectorField v = perp_gradient(psi);
    CHECK(l2_norm(divergence(v)) < 1e-12 * l2_norm(v));
    // curl of perp-gradient is the laplacian
    ScalarField c = curl2d(v);
    CHECK(rel(l2_norm(c - laplacian(psi)), l2_norm(c)) < 1e-12);
}
