#include "rmhd/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rmhd {

void IntegratorConfig::validate() const {
    if (dt.has_value() == cfl.has_value())
        throw BoundsError("integrator: exactly one of dt / cfl must be set");
    if (dt && !(*dt > 0.0)) throw BoundsError("integrator.dt must be positive");
    if (cfl && (!(*cfl > 0.0) || *cfl > 1.0)) throw BoundsError("integrator.cfl must be in (0, 1]");
    if (!(t_end > 0.0)) throw BoundsError("integrator.t_end must be positive");
    if (!(c_cor > 0.0)) throw BoundsError("integrator.c_cor must be positive");
    if (invariant_check_every < 1) throw BoundsError("integrator.invariant_check_every must be >= 1");
}

namespace {

// Stage arithmetic is done on spectral coefficients so the integrating
// factors are pointwise multiplies.
struct SpecState {
    SpectralScalar s;
    SpectralVector u, b;
};

struct SpecTendency {
    SpectralScalar s;
    SpectralVector u, b;
};

SpecState to_spec(const ScalarField& s, const VectorField& u, const VectorField& b) {
    return {transform(s), transform(u), transform(b)};
}

void spec_axpy(double a, const SpectralScalar& x, SpectralScalar& y) {
    for (size_t i = 0; i < y.modes.size(); ++i) y.modes[i] += a * x.modes[i];
}

void spec_axpy(double a, const SpecTendency& x, SpecState& y) {
    spec_axpy(a, x.s, y.s);
    spec_axpy(a, x.u.x, y.u.x);
    spec_axpy(a, x.u.y, y.u.y);
    spec_axpy(a, x.b.x, y.b.x);
    spec_axpy(a, x.b.y, y.b.y);
}

// exp(-c |k|^2 tau) multipliers for a given grid.
std::vector<double> heat_factors(const GridSpec& g, double c_tau) {
    const int n = g.n;
    const double k0 = g.k0();
    std::vector<double> out(static_cast<size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy) {
        const double ky = k0 * fft_mode(iy, n);
        for (int ix = 0; ix < n; ++ix) {
            const double kx = k0 * fft_mode(ix, n);
            out[static_cast<size_t>(iy) * n + ix] = std::exp(-c_tau * (kx * kx + ky * ky));
        }
    }
    return out;
}

void apply_factors(SpectralScalar& s, const std::vector<double>& f) {
    for (size_t i = 0; i < s.modes.size(); ++i) s.modes[i] *= f[i];
}

struct Exponentials {
    std::vector<double> u_full, u_half, b_full, b_half;
};

// Applies exp(L tau) to (u, b); the transported scalar has no stiff part.
void apply_exp(SpecState& x, const std::vector<double>& fu, const std::vector<double>& fb) {
    apply_factors(x.u.x, fu);
    apply_factors(x.u.y, fu);
    apply_factors(x.b.x, fb);
    apply_factors(x.b.y, fb);
}

void apply_exp(SpecTendency& x, const std::vector<double>& fu, const std::vector<double>& fb) {
    apply_factors(x.u.x, fu);
    apply_factors(x.u.y, fu);
    apply_factors(x.b.x, fb);
    apply_factors(x.b.y, fb);
}

// Explicit tendency: full RHS minus the floor diffusion handled implicitly.
template <class RhsFn>
SpecTendency explicit_part(const SpecState& x, double nu_star, double mu_star, const RhsFn& rhs) {
    ScalarField s = inverse(x.s);
    VectorField u = inverse(x.u);
    VectorField b = inverse(x.b);
    Tendency t = rhs(s, u, b);
    SpecTendency out{transform(t.ds), transform(t.du), transform(t.db)};
    SpectralScalar lap;
    lap = laplacian_spec(x.u.x);
    spec_axpy(-nu_star, lap, out.u.x);
    lap = laplacian_spec(x.u.y);
    spec_axpy(-nu_star, lap, out.u.y);
    lap = laplacian_spec(x.b.x);
    spec_axpy(-mu_star, lap, out.b.x);
    lap = laplacian_spec(x.b.y);
    spec_axpy(-mu_star, lap, out.b.y);
    return out;
}

template <class RhsFn>
SpecState ifrk_step(const SpecState& x0, double dt, double nu_star, double mu_star, Scheme scheme,
                    const RhsFn& rhs) {
    const GridSpec& g = x0.s.grid;
    const std::vector<double> eu_full = heat_factors(g, nu_star * dt);
    const std::vector<double> eb_full = heat_factors(g, mu_star * dt);

    if (scheme == Scheme::imex_rk2) {
        // Heun in the integrating-factor variable.
        SpecTendency g1 = explicit_part(x0, nu_star, mu_star, rhs);
        SpecState x1 = x0;
        spec_axpy(dt, g1, x1);
        apply_exp(x1, eu_full, eb_full);
        SpecTendency g2 = explicit_part(x1, nu_star, mu_star, rhs);

        SpecState out = x0;
        spec_axpy(0.5 * dt, g1, out);
        apply_exp(out, eu_full, eb_full);
        spec_axpy(0.5 * dt, g2, out);
        return out;
    }

    // Kutta's third-order method in the integrating-factor variable.
    const std::vector<double> eu_half = heat_factors(g, nu_star * 0.5 * dt);
    const std::vector<double> eb_half = heat_factors(g, mu_star * 0.5 * dt);

    SpecTendency g1 = explicit_part(x0, nu_star, mu_star, rhs);

    SpecState x1 = x0;
    spec_axpy(0.5 * dt, g1, x1);
    apply_exp(x1, eu_half, eb_half);
    SpecTendency g2 = explicit_part(x1, nu_star, mu_star, rhs);

    SpecState x2 = x0;
    spec_axpy(-dt, g1, x2);
    apply_exp(x2, eu_full, eb_full);
    SpecTendency g2s = g2;
    apply_exp(g2s, eu_half, eb_half);
    // the transported scalar is not damped, so its stage term is plain
    spec_axpy(2.0 * dt, g2s.s, x2.s);
    spec_axpy(2.0 * dt, g2s.u.x, x2.u.x);
    spec_axpy(2.0 * dt, g2s.u.y, x2.u.y);
    spec_axpy(2.0 * dt, g2s.b.x, x2.b.x);
    spec_axpy(2.0 * dt, g2s.b.y, x2.b.y);
    SpecTendency g3 = explicit_part(x2, nu_star, mu_star, rhs);

    SpecState out = x0;
    spec_axpy(dt / 6.0, g1, out);
    apply_exp(out, eu_full, eb_full);
    SpecTendency g2w = g2;
    apply_exp(g2w, eu_half, eb_half);
    spec_axpy(4.0 * dt / 6.0, g2w.s, out.s);
    spec_axpy(4.0 * dt / 6.0, g2w.u.x, out.u.x);
    spec_axpy(4.0 * dt / 6.0, g2w.u.y, out.u.y);
    spec_axpy(4.0 * dt / 6.0, g2w.b.x, out.b.x);
    spec_axpy(4.0 * dt / 6.0, g2w.b.y, out.b.y);
    spec_axpy(dt / 6.0, g3, out);
    return out;
}

double spec_l2(const SpectralScalar& s) {
    double sum = 0.0;
    for (const auto& m : s.modes) sum += std::norm(m);
    return std::sqrt(sum) * s.grid.length;
}

double energy_proxy(const ScalarField& rho_like, const VectorField& u, const VectorField& b) {
    double e = 0.0;
    for (size_t i = 0; i < u.x.values.size(); ++i) {
        e += 0.5 * rho_like.values[i] *
                 (u.x.values[i] * u.x.values[i] + u.y.values[i] * u.y.values[i]) +
             0.5 * (b.x.values[i] * b.x.values[i] + b.y.values[i] * b.y.values[i]);
    }
    const double h = u.grid().h();
    return e * h * h;
}

double advective_bound(double cfl, double h, double speed) {
    return speed > 0.0 ? cfl * h / speed : std::numeric_limits<double>::infinity();
}

double coefficient_excess(const CoefficientLaw& law, const ScalarField& rho) {
    double m = 0.0;
    for (double v : rho.values) m = std::max(m, law.eval(v) - law.floor);
    return m;
}

double diffusive_bound(double cfl, double excess, const GridSpec& g) {
    if (excess <= 0.0) return std::numeric_limits<double>::infinity();
    const double kmax = g.k0() * g.max_mode();
    return cfl / (excess * 2.0 * kmax * kmax);
}

void check_fixed_dt(double dt, double bound) {
    if (dt > bound * (1.0 + 1e-12))
        throw CflViolation("requested dt exceeds the stability bound");
}

}  // namespace

double cfl_dt(const PrimitiveState& state, const PhysParams& params, const IntegratorConfig& cfg) {
    const double cfl = cfg.cfl.value_or(1.0);
    double dt = cfg.dt_max;
    dt = std::min(dt, advective_bound(cfl, state.grid().h(), max_abs(state.u)));
    dt = std::min(dt, advective_bound(cfl, state.grid().h(), max_abs(state.b)));
    dt = std::min(dt, diffusive_bound(cfl, coefficient_excess(params.nu, state.rho), state.grid()));
    dt = std::min(dt, diffusive_bound(cfl, coefficient_excess(params.mu, state.rho), state.grid()));
    if (!params.qh_cancellation) dt = std::min(dt, cfg.c_cor * params.epsilon);
    return dt;
}

double cfl_dt(const LimitState& state, double /*nu1*/, double /*mu1*/, const IntegratorConfig& cfg) {
    const double cfl = cfg.cfl.value_or(1.0);
    double dt = cfg.dt_max;
    dt = std::min(dt, advective_bound(cfl, state.grid().h(), max_abs(state.u)));
    dt = std::min(dt, advective_bound(cfl, state.grid().h(), max_abs(state.b)));
    return dt;
}

StepReport imex_step(PrimitiveState& state, const PhysParams& params, const IntegratorConfig& cfg,
                     double dt) {
    params.validate();
    if (cfg.dt) {
        IntegratorConfig probe = cfg;
        probe.cfl = probe.cfl ? probe.cfl : std::optional<double>(1.0);
        probe.dt.reset();
        probe.dt_max = std::numeric_limits<double>::infinity();
        check_fixed_dt(dt, cfl_dt(state, params, probe));
    }
    const double e_old = energy_proxy(state.rho, state.u, state.b);

    auto rhs = [&](const ScalarField& rho, const VectorField& u, const VectorField& b) {
        PrimitiveState s;
        s.time = state.time;
        s.rho = rho;
        s.u = u;
        s.b = b;
        return primitive_rhs(s, params);
    };
    SpecState x = to_spec(state.rho, state.u, state.b);
    SpecState xn = ifrk_step(x, dt, params.nu.floor, params.mu.floor, cfg.scheme, rhs);

    StepReport rep;
    rep.dt_used = dt;
    rep.div_u_residual = spec_l2(divergence(xn.u));
    rep.div_b_residual = spec_l2(divergence(xn.b));

    state.time += dt;
    state.rho = inverse(xn.s);
    state.u = inverse(xn.u);
    state.b = inverse(xn.b);
    check_finite(state.rho);
    check_finite(state.u);
    check_finite(state.b);

    rep.time = state.time;
    rep.floor_margin = min_value(state.rho) - params.rho_min;
    if (rep.floor_margin < -1e-6 * params.rho_min)
        throw DensityFloorBreach("density fell below rho_min during a step");
    if (max_abs(state.rho) > 2.0 * params.rho_star * (1.0 + 1e-6))
        throw DensityFloorBreach("density exceeded the 2*rho_star ceiling");
    const double e_new = energy_proxy(state.rho, state.u, state.b);
    rep.energy_balance_residual = (e_new - e_old) / dt;
    return rep;
}

StepReport imex_step(LimitState& state, double nu1, double mu1, const IntegratorConfig& cfg,
                     double dt) {
    if (cfg.dt) {
        IntegratorConfig probe = cfg;
        probe.cfl = probe.cfl ? probe.cfl : std::optional<double>(1.0);
        probe.dt.reset();
        probe.dt_max = std::numeric_limits<double>::infinity();
        check_fixed_dt(dt, cfl_dt(state, nu1, mu1, probe));
    }
    ScalarField ones(state.grid());
    for (double& v : ones.values) v = 1.0;
    const double e_old = energy_proxy(ones, state.u, state.b);

    auto rhs = [&](const ScalarField& r, const VectorField& u, const VectorField& b) {
        LimitState s;
        s.time = state.time;
        s.r = r;
        s.u = u;
        s.b = b;
        return limit_rhs(s, nu1, mu1, cfg.friedrichs_j);
    };
    SpecState x = to_spec(state.r, state.u, state.b);
    SpecState xn = ifrk_step(x, dt, nu1, mu1, cfg.scheme, rhs);

    StepReport rep;
    rep.dt_used = dt;
    rep.div_u_residual = spec_l2(divergence(xn.u));
    rep.div_b_residual = spec_l2(divergence(xn.b));

    state.time += dt;
    state.r = inverse(xn.s);
    state.u = inverse(xn.u);
    state.b = inverse(xn.b);
    check_finite(state.r);
    check_finite(state.u);
    check_finite(state.b);

    rep.time = state.time;
    rep.floor_margin = 0.0;
    const double e_new = energy_proxy(ones, state.u, state.b);
    rep.energy_balance_residual = (e_new - e_old) / dt;
    return rep;
}

namespace {

template <class State, class Step>
void advance_loop(State& state, const IntegratorConfig& cfg, double t_end, const Step& one_step,
                  const std::function<void(const State&, const StepReport&)>& sink) {
    if (t_end < state.time - 1e-14) throw BoundsError("advance_to: t_end precedes current time");
    int step_count = 0;
    while (state.time < t_end - 1e-14) {
        const double remaining = t_end - state.time;
        StepReport rep = one_step(state, remaining);
        ++step_count;
        const bool last = state.time >= t_end - 1e-14;
        if (sink && (step_count % cfg.invariant_check_every == 0 || last)) sink(state, rep);
    }
    state.time = t_end;  // clamp round-off
}

}  // namespace

void advance_to(PrimitiveState& state, const PhysParams& params, const IntegratorConfig& cfg,
                double t_end, const PrimitiveSink& sink) {
    cfg.validate();
    auto one_step = [&](PrimitiveState& s, double remaining) {
        const double nominal = cfg.dt ? *cfg.dt : cfl_dt(s, params, cfg);
        return imex_step(s, params, cfg, std::min(nominal, remaining));
    };
    advance_loop<PrimitiveState>(state, cfg, t_end, one_step, sink);
}

void advance_to(LimitState& state, double nu1, double mu1, const IntegratorConfig& cfg,
                double t_end, const LimitSink& sink) {
    cfg.validate();
    auto one_step = [&](LimitState& s, double remaining) {
        const double nominal = cfg.dt ? *cfg.dt : cfl_dt(s, nu1, mu1, cfg);
        return imex_step(s, nu1, mu1, cfg, std::min(nominal, remaining));
    };
    advance_loop<LimitState>(state, cfg, t_end, one_step, sink);
}

}  // namespace rmhd
