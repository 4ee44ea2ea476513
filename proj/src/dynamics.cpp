#include "rmhd/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "rmhd/lp.hpp"

namespace rmhd {

CoefficientLaw CoefficientLaw::constant(double value, double floor_value) {
    CoefficientLaw law;
    law.kind = Kind::constant;
    law.c0 = value;
    law.floor = floor_value;
    return law;
}

CoefficientLaw CoefficientLaw::affine(double intercept, double slope, double floor_value) {
    CoefficientLaw law;
    law.kind = Kind::affine;
    law.c0 = intercept;
    law.c1 = slope;
    law.floor = floor_value;
    return law;
}

CoefficientLaw CoefficientLaw::table(std::vector<double> rho, std::vector<double> value,
                                     double floor_value) {
    if (rho.size() < 2 || rho.size() != value.size())
        throw BoundsError("table law needs matching node/value lists of size >= 2");
    if (!std::is_sorted(rho.begin(), rho.end()))
        throw BoundsError("table law nodes must be monotone increasing");
    CoefficientLaw law;
    law.kind = Kind::table;
    law.table_rho = std::move(rho);
    law.table_value = std::move(value);
    law.floor = floor_value;
    return law;
}

double CoefficientLaw::eval(double rho) const {
    switch (kind) {
        case Kind::constant:
            return c0;
        case Kind::affine:
            return c0 + c1 * rho;
        case Kind::table: {
            if (rho <= table_rho.front()) return table_value.front();
            if (rho >= table_rho.back()) return table_value.back();
            auto it = std::upper_bound(table_rho.begin(), table_rho.end(), rho);
            const size_t i = static_cast<size_t>(it - table_rho.begin());
            const double t = (rho - table_rho[i - 1]) / (table_rho[i] - table_rho[i - 1]);
            return (1.0 - t) * table_value[i - 1] + t * table_value[i];
        }
    }
    return c0;
}

ScalarField coefficient_eval(const CoefficientLaw& law, const ScalarField& rho) {
    check_finite(rho);
    ScalarField out = rho;
    for (double& v : out.values) {
        v = law.eval(v);
        if (v < law.floor) throw FloorViolation("coefficient law dips below its floor");
    }
    return out;
}

void PhysParams::validate() const {
    if (!(epsilon > 0.0) || epsilon > 1.0) throw BoundsError("physics.epsilon must be in (0, 1]");
    if (!(rho_min > 0.0) || rho_min > rho_star)
        throw BoundsError("physics requires 0 < rho_min <= rho_star");
    if (!(nu.floor > 0.0) || !(mu.floor > 0.0))
        throw BoundsError("nu and mu floors must be positive");
}

namespace {

ScalarField pointwise_inverse(const ScalarField& f) {
    ScalarField out = f;
    for (double& v : out.values) v = 1.0 / v;
    return out;
}

// div of a symmetric-product tensor (a_i b_j), assembled spectrally from
// dealiased pointwise products.
SpectralVector div_tensor(const VectorField& a, const VectorField& b) {
    SpectralScalar xx = dealias(transform(multiply(a.x, b.x)));
    SpectralScalar xy = dealias(transform(multiply(a.x, b.y)));
    SpectralScalar yx = dealias(transform(multiply(a.y, b.x)));
    SpectralScalar yy = dealias(transform(multiply(a.y, b.y)));
    SpectralVector row1, row2;
    row1.x = xx;
    row1.y = yx;  // d_i (a_i b_x)
    row2.x = xy;
    row2.y = yy;
    SpectralVector out;
    out.x = divergence(row1);
    out.y = divergence(row2);
    return out;
}

void enforce_floor(const ScalarField& rho, double rho_min) {
    if (min_value(rho) < rho_min * (1.0 - 1e-6))
        throw DensityFloorBreach("density fell below rho_min");
}

// Full unprojected momentum tendency of the primitive system (velocity
// form); shared by primitive_rhs and pressure_recover.
VectorField primitive_momentum_tendency(const PrimitiveState& state, const PhysParams& params) {
    const ScalarField& rho = state.rho;
    const VectorField& u = state.u;
    const VectorField& b = state.b;
    const ScalarField inv_rho = pointwise_inverse(rho);

    // Advection: -div(u (x) u)
    SpectralVector adv = div_tensor(u, u);

    // Coriolis: -(1/eps)(rho/mean rho) u^perp, or -(r/mean rho) u^perp with
    // the quasi-homogeneous cancellation (identical after projection).
    const double rho_bar = mean(rho);
    VectorField up = perp(u);
    ScalarField cor_weight(rho.grid);
    if (params.qh_cancellation) {
        for (size_t i = 0; i < rho.values.size(); ++i)
            cor_weight.values[i] = (rho.values[i] - 1.0) / (params.epsilon * rho_bar);
    } else {
        for (size_t i = 0; i < rho.values.size(); ++i)
            cor_weight.values[i] = rho.values[i] / (params.epsilon * rho_bar);
    }
    VectorField cor;
    cor.x = multiply(cor_weight, up.x);
    cor.y = multiply(cor_weight, up.y);

    // Diffusion: (1/rho) div(nu(rho) grad u)
    ScalarField nu_field = coefficient_eval(params.nu, rho);
    SpectralVector su = transform(u);
    VectorField gux = inverse(gradient(su.x));
    VectorField guy = inverse(gradient(su.y));
    SpectralVector flux_x, flux_y;
    flux_x.x = dealias(transform(multiply(nu_field, gux.x)));
    flux_x.y = dealias(transform(multiply(nu_field, gux.y)));
    flux_y.x = dealias(transform(multiply(nu_field, guy.x)));
    flux_y.y = dealias(transform(multiply(nu_field, guy.y)));
    VectorField diff;
    diff.x = inverse(divergence(flux_x));
    diff.y = inverse(divergence(flux_y));

    // Lorentz force: (1/rho)(div(b (x) b) - grad |b|^2 / 2)
    SpectralVector lorentz_s = div_tensor(b, b);
    ScalarField b2(rho.grid);
    for (size_t i = 0; i < b2.values.size(); ++i)
        b2.values[i] = 0.5 * (b.x.values[i] * b.x.values[i] + b.y.values[i] * b.y.values[i]);
    SpectralVector gb2 = gradient(dealias(transform(b2)));
    VectorField lorentz = inverse(lorentz_s) - inverse(gb2);

    VectorField tendency(rho.grid);
    VectorField adv_phys = inverse(adv);
    for (size_t i = 0; i < tendency.x.values.size(); ++i) {
        tendency.x.values[i] = -adv_phys.x.values[i] - cor.x.values[i] +
                               inv_rho.values[i] * (diff.x.values[i] + lorentz.x.values[i]);
        tendency.y.values[i] = -adv_phys.y.values[i] - cor.y.values[i] +
                               inv_rho.values[i] * (diff.y.values[i] + lorentz.y.values[i]);
    }
    return tendency;
}

// db/dt = perp_grad(mu(rho) curl b - (u1 b2 - u2 b1)); divergence-free and
// mean-free by construction.
SpectralVector induction_tendency(const VectorField& u, const VectorField& b,
                                  const ScalarField& mu_field) {
    ScalarField curl_b = inverse(curl2d(transform(b)));
    ScalarField s(u.grid());
    for (size_t i = 0; i < s.values.size(); ++i) {
        const double w = u.x.values[i] * b.y.values[i] - u.y.values[i] * b.x.values[i];
        s.values[i] = mu_field.values[i] * curl_b.values[i] - w;
    }
    SpectralScalar ss = dealias(transform(s));
    SpectralVector g = gradient(ss);
    // perp of gradient: (-d_y s, d_x s)
    SpectralVector out;
    out.x = g.y;
    for (auto& m : out.x.modes) m = -m;
    out.y = g.x;
    return out;
}

}  // namespace

Tendency primitive_rhs(const PrimitiveState& state, const PhysParams& params) {
    params.validate();
    check_finite(state.rho);
    check_finite(state.u);
    check_finite(state.b);
    enforce_floor(state.rho, params.rho_min);

    Tendency out;

    // Mass: conservative transport, so the mean of rho is conserved exactly.
    SpectralVector mass_flux;
    mass_flux.x = dealias(transform(multiply(state.rho, state.u.x)));
    mass_flux.y = dealias(transform(multiply(state.rho, state.u.y)));
    SpectralScalar ds = divergence(mass_flux);
    for (auto& m : ds.modes) m = -m;
    out.ds = inverse(ds);

    VectorField f = primitive_momentum_tendency(state, params);
    SpectralVector sf = transform(f);
    sf.x = dealias(sf.x);
    sf.y = dealias(sf.y);
    out.du = inverse(leray_project(sf));

    ScalarField mu_field = coefficient_eval(params.mu, state.rho);
    out.db = inverse(leray_project(induction_tendency(state.u, state.b, mu_field)));
    return out;
}

Tendency limit_rhs(const LimitState& state, double nu1, double mu1, int friedrichs_j) {
    check_finite(state.r);
    check_finite(state.u);
    check_finite(state.b);

    const GridSpec& g = state.grid();
    auto truncate = [&](SpectralScalar s) {
        return friedrichs_j > 0 ? sharp_cutoff_Aj(s, friedrichs_j) : s;
    };

    Tendency out;

    // dr/dt = -div(r u), truncated with the nonlinearity when active.
    SpectralVector r_flux;
    r_flux.x = dealias(transform(multiply(state.r, state.u.x)));
    r_flux.y = dealias(transform(multiply(state.r, state.u.y)));
    SpectralScalar ds = truncate(divergence(r_flux));
    for (auto& m : ds.modes) m = -m;
    out.ds = inverse(ds);

    // du/dt = P A_j [-div(u(x)u) + div(b(x)b) - r u^perp] + nu1 lap u
    SpectralVector adv = div_tensor(state.u, state.u);
    SpectralVector lor = div_tensor(state.b, state.b);
    VectorField up = perp(state.u);
    SpectralVector cor;
    cor.x = dealias(transform(multiply(state.r, up.x)));
    cor.y = dealias(transform(multiply(state.r, up.y)));
    SpectralVector nl(g);
    for (size_t i = 0; i < nl.x.modes.size(); ++i) {
        nl.x.modes[i] = -adv.x.modes[i] + lor.x.modes[i] - cor.x.modes[i];
        nl.y.modes[i] = -adv.y.modes[i] + lor.y.modes[i] - cor.y.modes[i];
    }
    nl.x = truncate(nl.x);
    nl.y = truncate(nl.y);
    SpectralVector pu = leray_project(nl);
    SpectralScalar lap_u_x = laplacian_spec(transform(state.u.x));
    SpectralScalar lap_u_y = laplacian_spec(transform(state.u.y));
    for (size_t i = 0; i < pu.x.modes.size(); ++i) {
        pu.x.modes[i] += nu1 * lap_u_x.modes[i];
        pu.y.modes[i] += nu1 * lap_u_y.modes[i];
    }
    out.du = inverse(pu);

    // db/dt = -A_j div(u(x)b - b(x)u) + mu1 lap b  (perp-gradient form)
    ScalarField w(g);
    for (size_t i = 0; i < w.values.size(); ++i)
        w.values[i] = state.u.x.values[i] * state.b.y.values[i] -
                      state.u.y.values[i] * state.b.x.values[i];
    SpectralScalar sw = truncate(dealias(transform(w)));
    SpectralVector gw = gradient(sw);
    SpectralScalar lap_b_x = laplacian_spec(transform(state.b.x));
    SpectralScalar lap_b_y = laplacian_spec(transform(state.b.y));
    SpectralVector db(g);
    for (size_t i = 0; i < db.x.modes.size(); ++i) {
        db.x.modes[i] = gw.y.modes[i] + mu1 * lap_b_x.modes[i];
        db.y.modes[i] = -gw.x.modes[i] + mu1 * lap_b_y.modes[i];
    }
    out.db = inverse(db);
    return out;
}

ScalarField pressure_recover(const PrimitiveState& state, const PhysParams& params) {
    params.validate();
    enforce_floor(state.rho, params.rho_min);
    VectorField f = primitive_momentum_tendency(state, params);
    SpectralVector sf = transform(f);
    sf.x = dealias(sf.x);
    sf.y = dealias(sf.y);
    // grad q = (I - P) f, so lap q = div f.
    ScalarField div_f = inverse(divergence(sf));
    ScalarField q = poisson_solve(div_f, /*require_zero_mean=*/false);
    // Sign convention: the recovered potential enters the momentum equation
    // as -grad q, matching the pressure combination pi/eps + |b|^2/2.
    for (double& v : q.values) v = -v;
    return q;
}

namespace {

DiagnosticsRecord diagnostics_core(double time, const ScalarField& rho, const VectorField& u,
                                   const VectorField& b, const ScalarField& nu_field,
                                   const ScalarField& mu_field, const ScalarField& r_like) {
    DiagnosticsRecord rec;
    rec.time = time;
    const GridSpec& g = rho.grid;
    const double cell = g.h() * g.h();

    SpectralVector su = transform(u);
    VectorField gux = inverse(gradient(su.x));
    VectorField guy = inverse(gradient(su.y));
    ScalarField curl_b = inverse(curl2d(transform(b)));

    double ke = 0.0, me = 0.0, vd = 0.0, rd = 0.0;
    for (size_t i = 0; i < rho.values.size(); ++i) {
        const double u2 = u.x.values[i] * u.x.values[i] + u.y.values[i] * u.y.values[i];
        const double b2 = b.x.values[i] * b.x.values[i] + b.y.values[i] * b.y.values[i];
        const double grad_u2 = gux.x.values[i] * gux.x.values[i] + gux.y.values[i] * gux.y.values[i] +
                               guy.x.values[i] * guy.x.values[i] + guy.y.values[i] * guy.y.values[i];
        ke += 0.5 * rho.values[i] * u2;
        me += 0.5 * b2;
        vd += nu_field.values[i] * grad_u2;
        rd += mu_field.values[i] * curl_b.values[i] * curl_b.values[i];
    }
    rec.kinetic_energy = ke * cell;
    rec.magnetic_energy = me * cell;
    rec.viscous_dissipation = vd * cell;
    rec.resistive_dissipation = rd * cell;
    rec.div_u_norm = l2_norm(inverse(divergence(su)));
    rec.div_b_norm = l2_norm(divergence(b));
    rec.r_l2 = lp_norm(r_like, 2.0);
    rec.r_l4 = lp_norm(r_like, 4.0);
    rec.r_linf = max_abs(r_like);
    return rec;
}

}  // namespace

DiagnosticsRecord diagnostics_compute(const PrimitiveState& state, const PhysParams& params,
                                      const ScalarField& rho0, double delta) {
    check_same_grid(state.grid(), rho0.grid);
    ScalarField nu_field = coefficient_eval(params.nu, state.rho);
    ScalarField mu_field = coefficient_eval(params.mu, state.rho);
    ScalarField sigma = state.rho - rho0;
    for (double& v : sigma.values) v /= params.epsilon;
    DiagnosticsRecord rec =
        diagnostics_core(state.time, state.rho, state.u, state.b, nu_field, mu_field, sigma);
    rec.sigma_sobolev_proxy = sobolev_norm(sigma, -3.0 - delta);
    VectorField rho0u;
    rho0u.x = multiply(rho0, state.u.x);
    rho0u.y = multiply(rho0, state.u.y);
    rec.rho0u_constraint = sobolev_norm(divergence(rho0u), -1.0);
    return rec;
}

DiagnosticsRecord diagnostics_compute(const LimitState& state, double nu1, double mu1,
                                      double delta) {
    ScalarField ones(state.grid());
    for (double& v : ones.values) v = 1.0;
    ScalarField nu_field = nu1 * ones;
    ScalarField mu_field = mu1 * ones;
    DiagnosticsRecord rec =
        diagnostics_core(state.time, ones, state.u, state.b, nu_field, mu_field, state.r);
    rec.sigma_sobolev_proxy = sobolev_norm(state.r, -3.0 - delta);
    rec.rho0u_constraint = sobolev_norm(divergence(state.u), -1.0);
    return rec;
}

}  // namespace rmhd
