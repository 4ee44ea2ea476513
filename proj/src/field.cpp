#include "rmhd/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rmhd {

void check_finite(const ScalarField& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) throw NonFinite("field contains NaN/Inf");
}

void check_finite(const VectorField& v) {
    check_finite(v.x);
    check_finite(v.y);
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a.grid, b.grid);
    ScalarField out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a.grid, b.grid);
    ScalarField out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

ScalarField operator*(double c, const ScalarField& a) {
    ScalarField out = a;
    for (double& v : out.values) v *= c;
    return out;
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a.grid, b.grid);
    ScalarField out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
    return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField out;
    out.x = a.x + b.x;
    out.y = a.y + b.y;
    return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField out;
    out.x = a.x - b.x;
    out.y = a.y - b.y;
    return out;
}

VectorField operator*(double c, const VectorField& a) {
    VectorField out;
    out.x = c * a.x;
    out.y = c * a.y;
    return out;
}

void axpy(double a, const ScalarField& x, ScalarField& y) {
    check_same_grid(x.grid, y.grid);
    for (size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
}

void axpy(double a, const VectorField& x, VectorField& y) {
    axpy(a, x.x, y.x);
    axpy(a, x.y, y.y);
}

double mean(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / static_cast<double>(f.values.size());
}

double min_value(const ScalarField& f) {
    return *std::min_element(f.values.begin(), f.values.end());
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const VectorField& v) {
    check_same_grid(v.x.grid, v.y.grid);
    double m = 0.0;
    for (size_t i = 0; i < v.x.values.size(); ++i)
        m = std::max(m, std::hypot(v.x.values[i], v.y.values[i]));
    return m;
}

double inner_l2(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a.grid, b.grid);
    double s = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
    return s * a.grid.h() * a.grid.h();
}

double inner_l2(const VectorField& a, const VectorField& b) {
    return inner_l2(a.x, b.x) + inner_l2(a.y, b.y);
}

double l2_norm(const ScalarField& f) { return std::sqrt(inner_l2(f, f)); }

double l2_norm(const VectorField& v) { return std::sqrt(inner_l2(v, v)); }

double lp_norm(const ScalarField& f, double p) {
    if (std::isinf(p)) return max_abs(f);
    double s = 0.0;
    for (double v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid.h() * f.grid.h(), 1.0 / p);
}

ScalarField sample(const GridSpec& g, const std::function<double(double, double)>& fn) {
    ScalarField out(g);
    const double h = g.h();
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) out.at(ix, iy) = fn(ix * h, iy * h);
    return out;
}

}  // namespace rmhd
