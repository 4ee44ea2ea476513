#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rmhd/config.hpp"
#include "rmhd/io.hpp"
#include "rmhd/lp.hpp"

namespace py = pybind11;
using namespace rmhd;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ScalarField to_field(const Array& a, double length) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw py::value_error("expected a square 2-D array");
    GridSpec g{static_cast<int>(a.shape(0)), length};
    validate(g);
    ScalarField f(g);
    std::memcpy(f.values.data(), a.data(), f.values.size() * sizeof(double));
    return f;
}

Array from_field(const ScalarField& f) {
    Array a({f.grid.n, f.grid.n});
    std::memcpy(a.mutable_data(), f.values.data(), f.values.size() * sizeof(double));
    return a;
}

InitialDataPreset preset_from(const std::string& kind, std::uint64_t seed, int band) {
    InitialDataPreset p;
    if (kind == "taylor_green")
        p.kind = InitialDataPreset::Kind::taylor_green;
    else if (kind == "random_bandlimited")
        p.kind = InitialDataPreset::Kind::random_bandlimited;
    else if (kind == "quasi_homog")
        p.kind = InitialDataPreset::Kind::quasi_homog;
    else if (kind == "nonhomog")
        p.kind = InitialDataPreset::Kind::nonhomog;
    else
        throw py::value_error("unknown preset kind: " + kind);
    p.name = kind;
    p.seed = seed;
    p.band = band;
    return p;
}

}  // namespace

PYBIND11_MODULE(_rmhd, m) {
    m.doc() = "pseudo-spectral rotating MHD suite (2-D torus)";
    constexpr double two_pi = 6.283185307179586476925286766559;

    m.def("version", [] { return std::string("1.0.0"); });

    m.def(
        "leray_project",
        [](const Array& ux, const Array& uy, double length) {
            VectorField v;
            v.x = to_field(ux, length);
            v.y = to_field(uy, length);
            VectorField p = leray_project(v);
            return py::make_tuple(from_field(p.x), from_field(p.y));
        },
        py::arg("ux"), py::arg("uy"), py::arg("length") = two_pi);

    m.def(
        "divergence",
        [](const Array& ux, const Array& uy, double length) {
            VectorField v;
            v.x = to_field(ux, length);
            v.y = to_field(uy, length);
            return from_field(divergence(v));
        },
        py::arg("ux"), py::arg("uy"), py::arg("length") = two_pi);

    m.def(
        "sobolev_norm",
        [](const Array& f, double s, double length) {
            return sobolev_norm(to_field(f, length), s);
        },
        py::arg("f"), py::arg("s"), py::arg("length") = two_pi);

    m.def(
        "besov_norm",
        [](const Array& f, double s, double p, double r, double length) {
            return besov_norm(to_field(f, length), BesovIndex{s, p, r});
        },
        py::arg("f"), py::arg("s"), py::arg("p") = 2.0, py::arg("r") = 2.0,
        py::arg("length") = two_pi);

    m.def(
        "paraproduct",
        [](const Array& u, const Array& v, double length) {
            return from_field(paraproduct(to_field(u, length), to_field(v, length)));
        },
        py::arg("u"), py::arg("v"), py::arg("length") = two_pi);

    m.def(
        "bony_remainder",
        [](const Array& u, const Array& v, double length) {
            return from_field(remainder(to_field(u, length), to_field(v, length)));
        },
        py::arg("u"), py::arg("v"), py::arg("length") = two_pi);

    m.def(
        "make_limit_data",
        [](int n, const std::string& kind, std::uint64_t seed, int band) {
            LimitState s = make_limit_data(preset_from(kind, seed, band), GridSpec{n});
            py::dict d;
            d["r"] = from_field(s.r);
            d["ux"] = from_field(s.u.x);
            d["uy"] = from_field(s.u.y);
            d["bx"] = from_field(s.b.x);
            d["by"] = from_field(s.b.y);
            return d;
        },
        py::arg("n"), py::arg("kind") = "random_bandlimited", py::arg("seed") = 7,
        py::arg("band") = 4);

    m.def(
        "advance_limit",
        [](py::dict state, double nu, double mu, double t_end, double dt, double length) {
            Array r = state["r"].cast<Array>();
            LimitState s;
            s.r = to_field(r, length);
            s.u.x = to_field(state["ux"].cast<Array>(), length);
            s.u.y = to_field(state["uy"].cast<Array>(), length);
            s.b.x = to_field(state["bx"].cast<Array>(), length);
            s.b.y = to_field(state["by"].cast<Array>(), length);
            IntegratorConfig cfg;
            cfg.dt = dt;
            cfg.t_end = t_end;
            advance_to(s, nu, mu, cfg, t_end);
            py::dict d;
            d["r"] = from_field(s.r);
            d["ux"] = from_field(s.u.x);
            d["uy"] = from_field(s.u.y);
            d["bx"] = from_field(s.b.x);
            d["by"] = from_field(s.b.y);
            d["time"] = s.time;
            return d;
        },
        py::arg("state"), py::arg("nu") = 1.0, py::arg("mu") = 1.0, py::arg("t_end") = 0.1,
        py::arg("dt") = 1e-3, py::arg("length") = two_pi);

    m.def(
        "invariant_suite",
        [](std::vector<int> grids, std::uint64_t seed, bool corrupt_leray) {
            SuiteConfig cfg;
            cfg.grid_sizes = std::move(grids);
            cfg.seed = seed;
            cfg.corrupt_leray = corrupt_leray;
            return invariant_suite(cfg).to_json();
        },
        py::arg("grids") = std::vector<int>{64}, py::arg("seed") = 7,
        py::arg("corrupt_leray") = false);

    m.def("default_config", &default_config_text);
    m.def("config_hash", [](const std::string& text) { return config_hash(parse_config(text)); });
}
