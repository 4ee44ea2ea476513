#include "rmhd/experiments.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rmhd/lp.hpp"

namespace rmhd {

void SweepPlan::validate() const {
    if (epsilons.empty()) throw BoundsError("sweep: epsilon list must not be empty");
    for (size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) throw BoundsError("sweep: epsilons must be positive");
        if (i > 0 && epsilons[i] > epsilons[i - 1] + 1e-15)
            throw BoundsError("sweep: epsilons must be nonincreasing");
    }
    rmhd::validate(grid);
    if (n_samples < 2) throw BoundsError("sweep: n_samples must be >= 2");
}

namespace {

std::vector<double> sample_times(double t_end, int n_samples) {
    std::vector<double> out(n_samples);
    for (int i = 0; i < n_samples; ++i) out[i] = t_end * i / (n_samples - 1);
    return out;
}

struct SampledRun {
    double epsilon = 0.0;
    bool ok = false;
    std::string reason;
    std::vector<double> times;
    std::vector<ScalarField> scalar;  // r (limit / quasi-homog) or sigma (nonhomog)
    std::vector<VectorField> u, b;
    std::vector<DiagnosticsRecord> diags;
    ScalarField div_rho0u_time_avg;  // (1/T) integral of div(rho0 u) dt
};

SampledRun run_primitive_sampled(const SweepPlan& plan, double eps) {
    SampledRun out;
    out.epsilon = eps;
    try {
        PhysParams params = plan.params;
        params.epsilon = eps;
        ScalarField rho0 = reference_density(plan.preset, plan.grid);
        PrimitiveState state = make_primitive_data(plan.preset, plan.grid, params);

        // Time-average of the constraint field, accumulated per step.
        ScalarField avg(plan.grid);
        double last_t = 0.0;
        ScalarField last_div(plan.grid);
        auto constraint_field = [&](const PrimitiveState& s) {
            VectorField rho0u;
            rho0u.x = multiply(rho0, s.u.x);
            rho0u.y = multiply(rho0, s.u.y);
            return divergence(rho0u);
        };
        last_div = constraint_field(state);

        IntegratorConfig cfg = plan.integrator;
        cfg.invariant_check_every = 1;
        auto sink = [&](const PrimitiveState& s, const StepReport&) {
            ScalarField cur = constraint_field(s);
            const double w = 0.5 * (s.time - last_t);
            axpy(w, last_div, avg);
            axpy(w, cur, avg);
            last_t = s.time;
            last_div = cur;
        };

        for (double t : sample_times(plan.t_end, plan.n_samples)) {
            advance_to(state, params, cfg, t, sink);
            out.times.push_back(t);
            ScalarField sig = state.rho - rho0;
            for (double& v : sig.values) v /= eps;
            out.scalar.push_back(sig);
            out.u.push_back(state.u);
            out.b.push_back(state.b);
            out.diags.push_back(diagnostics_compute(state, params, rho0));
        }
        if (plan.t_end > 0.0)
            for (double& v : avg.values) v /= plan.t_end;
        out.div_rho0u_time_avg = avg;
        out.ok = true;
    } catch (const std::exception& e) {
        out.reason = e.what();
    }
    return out;
}

SampledRun run_limit_sampled(const SweepPlan& plan, int friedrichs_j = 0) {
    SampledRun out;
    out.epsilon = 0.0;
    try {
        LimitState state = make_limit_data(plan.preset, plan.grid);
        const double nu1 = plan.params.nu.eval(1.0);
        const double mu1 = plan.params.mu.eval(1.0);
        IntegratorConfig cfg = plan.integrator;
        cfg.friedrichs_j = friedrichs_j;
        for (double t : sample_times(plan.t_end, plan.n_samples)) {
            advance_to(state, nu1, mu1, cfg, t);
            out.times.push_back(t);
            out.scalar.push_back(state.r);
            out.u.push_back(state.u);
            out.b.push_back(state.b);
            out.diags.push_back(diagnostics_compute(state, nu1, mu1));
        }
        out.ok = true;
    } catch (const std::exception& e) {
        out.reason = e.what();
    }
    return out;
}

double sup_distance_scalar(const SampledRun& a, const SampledRun& b, double s) {
    double d = 0.0;
    for (size_t i = 0; i < a.scalar.size(); ++i)
        d = std::max(d, sobolev_norm(a.scalar[i] - b.scalar[i], s));
    return d;
}

double sup_distance_vector(const std::vector<VectorField>& a, const std::vector<VectorField>& b,
                           double s) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, sobolev_norm(a[i] - b[i], s));
    return d;
}

RunOutcome outcome_of(const SampledRun& run) {
    RunOutcome o;
    o.epsilon = run.epsilon;
    o.ok = run.ok;
    o.failure_reason = run.reason;
    o.sample_times = run.times;
    o.diagnostics = run.diags;
    return o;
}

nlohmann::json distances_json(
    const std::map<std::string, std::map<double, std::vector<double>>>& distances) {
    nlohmann::json j;
    for (const auto& [field, per_s] : distances) {
        nlohmann::json inner;
        for (const auto& [s, values] : per_s) {
            std::ostringstream key;
            key << s;
            inner[key.str()] = values;
        }
        j[field] = inner;
    }
    return j;
}

nlohmann::json runs_json(const std::vector<RunOutcome>& runs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : runs) {
        nlohmann::json j;
        j["epsilon"] = r.epsilon;
        j["ok"] = r.ok;
        if (!r.ok) j["failure_reason"] = r.failure_reason;
        j["sample_times"] = r.sample_times;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace

std::string ConvergenceReport::to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["epsilons"] = epsilons;
    if (!j_values.empty()) j["j_values"] = j_values;
    j["distances"] = distances_json(distances);
    for (const auto& [name, curve] : curves) j["curves"][name] = curve;
    j["runs"] = runs_json(runs);
    j["note"] =
        "negative Sobolev distances are finite-grid surrogates for the weak-* "
        "convergence statements; no rate is claimed";
    return j.dump(2);
}

std::string StabilityReport::to_json() const {
    nlohmann::json j;
    j["delta0"] = delta0;
    j["times"] = times;
    j["energy"] = energy;
    j["dissipation"] = dissipation;
    j["sup_ratio"] = sup_ratio;
    j["groenwall_constant"] = groenwall_constant;
    return j.dump(2);
}

namespace {

// Launch one job per sweep member with at most n_threads in flight.
std::vector<SampledRun> run_members(const SweepPlan& plan,
                                    const std::function<SampledRun(double)>& job) {
    std::vector<SampledRun> results(plan.epsilons.size());
    const size_t width = std::max(1, plan.n_threads);
    for (size_t base = 0; base < plan.epsilons.size(); base += width) {
        std::vector<std::future<SampledRun>> batch;
        for (size_t i = base; i < std::min(base + width, plan.epsilons.size()); ++i)
            batch.push_back(std::async(std::launch::async, job, plan.epsilons[i]));
        for (size_t i = 0; i < batch.size(); ++i) results[base + i] = batch[i].get();
    }
    return results;
}

}  // namespace

ConvergenceReport quasi_homog_convergence(const SweepPlan& plan) {
    plan.validate();
    if (plan.preset.kind != InitialDataPreset::Kind::quasi_homog &&
        plan.preset.kind != InitialDataPreset::Kind::taylor_green)
        throw PresetInvalid("quasi_homog_convergence needs a quasi_homog (or taylor_green) preset");

    SweepPlan p = plan;
    p.params.qh_cancellation = true;  // densities are 1 + eps r; no stiffness

    SampledRun limit = run_limit_sampled(p);
    if (!limit.ok) throw Error("limit reference run failed: " + limit.reason);

    auto runs = run_members(p, [&p](double eps) { return run_primitive_sampled(p, eps); });

    ConvergenceReport rep;
    rep.experiment = "quasi_homog_convergence";
    rep.epsilons = p.epsilons;
    for (const auto& run : runs) {
        rep.runs.push_back(outcome_of(run));
        for (double s : p.comparison_norms) {
            if (run.ok) {
                rep.distances["r"][s].push_back(sup_distance_scalar(run, limit, s));
                rep.distances["u"][s].push_back(sup_distance_vector(run.u, limit.u, s));
                rep.distances["b"][s].push_back(sup_distance_vector(run.b, limit.b, s));
            } else {
                rep.distances["r"][s].push_back(std::nan(""));
                rep.distances["u"][s].push_back(std::nan(""));
                rep.distances["b"][s].push_back(std::nan(""));
            }
        }
    }
    return rep;
}

ConvergenceReport nonhomog_constraint_probe(const SweepPlan& plan) {
    plan.validate();
    if (plan.preset.kind != InitialDataPreset::Kind::nonhomog)
        throw PresetInvalid("nonhomog_constraint_probe needs a nonhomog preset");

    SweepPlan p = plan;
    p.params.qh_cancellation = false;  // genuinely stiff Coriolis

    auto runs = run_members(p, [&p](double eps) { return run_primitive_sampled(p, eps); });

    ConvergenceReport rep;
    rep.experiment = "nonhomog_constraint_probe";
    rep.epsilons = p.epsilons;
    const double k_exp = 1.5;  // one admissible choice in the (theta, beta, k) family
    for (const auto& run : runs) {
        rep.runs.push_back(outcome_of(run));
        if (!run.ok) {
            for (const char* name : {"constraint_avg_field", "constraint_avg_norm",
                                     "sigma_proxy_sup", "rho_dist_hk"})
                rep.curves[name].push_back(std::nan(""));
            continue;
        }
        // Weak-convergence surrogate: H^{-1} norm of the time-averaged field.
        rep.curves["constraint_avg_field"].push_back(
            sobolev_norm(run.div_rho0u_time_avg, -1.0));
        double avg_norm = 0.0, sig_sup = 0.0, rho_dist = 0.0;
        for (size_t i = 0; i < run.diags.size(); ++i) {
            avg_norm += run.diags[i].rho0u_constraint;
            sig_sup = std::max(sig_sup, run.diags[i].sigma_sobolev_proxy);
            ScalarField s_eps = run.epsilon * run.scalar[i];  // rho - rho0
            rho_dist = std::max(rho_dist, sobolev_norm(s_eps, -k_exp));
        }
        rep.curves["constraint_avg_norm"].push_back(avg_norm / run.diags.size());
        rep.curves["sigma_proxy_sup"].push_back(sig_sup);
        rep.curves["rho_dist_hk"].push_back(rho_dist);
    }
    return rep;
}

ConvergenceReport friedrichs_jsweep(const std::vector<int>& j_list, const SweepPlan& plan) {
    plan.validate();
    for (size_t i = 1; i < j_list.size(); ++i)
        if (j_list[i] <= j_list[i - 1]) throw BoundsError("jsweep: j list must be increasing");

    SweepPlan p = plan;
    if (!p.integrator.dt) {
        // Pin one dt for every member so trajectories are comparable.
        LimitState probe = make_limit_data(p.preset, p.grid);
        const double dt = cfl_dt(probe, p.params.nu.eval(1.0), p.params.mu.eval(1.0), p.integrator);
        p.integrator.dt = dt;
        p.integrator.cfl.reset();
    }

    SampledRun ref = run_limit_sampled(p, 0);
    if (!ref.ok) throw Error("untruncated reference run failed: " + ref.reason);

    ConvergenceReport rep;
    rep.experiment = "friedrichs_jsweep";
    rep.j_values = j_list;
    for (int j : j_list) {
        SampledRun run = run_limit_sampled(p, j);
        run.epsilon = static_cast<double>(j);
        rep.runs.push_back(outcome_of(run));
        for (double s : p.comparison_norms) {
            if (run.ok) {
                rep.distances["r"][s].push_back(sup_distance_scalar(run, ref, s));
                rep.distances["u"][s].push_back(sup_distance_vector(run.u, ref.u, s));
                rep.distances["b"][s].push_back(sup_distance_vector(run.b, ref.b, s));
            } else {
                rep.distances["r"][s].push_back(std::nan(""));
                rep.distances["u"][s].push_back(std::nan(""));
                rep.distances["b"][s].push_back(std::nan(""));
            }
        }
    }
    return rep;
}

StabilityReport stability_twin_run(const SweepPlan& plan, const std::vector<double>& delta0) {
    plan.validate();
    if (delta0.empty()) throw BoundsError("stability: need at least one perturbation scale");

    const double nu1 = plan.params.nu.eval(1.0);
    const double mu1 = plan.params.mu.eval(1.0);
    LimitState base0 = make_limit_data(plan.preset, plan.grid);

    // Fixed perturbation direction, scaled by delta0.
    VectorField du_dir = random_divfree_vector(plan.grid, derive_seed(plan.preset.seed, 101), plan.preset.band, 1.0);
    VectorField db_dir = random_divfree_vector(plan.grid, derive_seed(plan.preset.seed, 102), plan.preset.band, 1.0);
    ScalarField dr_dir = random_smooth_scalar(plan.grid, derive_seed(plan.preset.seed, 103), plan.preset.band, 1.0);
    du_dir = dealias(du_dir);
    db_dir = dealias(db_dir);
    dr_dir = dealias(dr_dir);

    StabilityReport rep;
    rep.delta0 = delta0;
    for (double d0 : delta0) {
        LimitState a = base0;
        LimitState b = base0;
        axpy(d0, du_dir, b.u);
        axpy(d0, db_dir, b.b);
        axpy(d0, dr_dir, b.r);

        std::vector<double> ts = sample_times(plan.t_end, plan.n_samples);
        std::vector<double> energy, diss;
        double acc = 0.0, last_t = 0.0, last_rate = 0.0;
        auto twin_energy = [&]() {
            const double eu = l2_norm(a.u - b.u);
            const double eb = l2_norm(a.b - b.b);
            const double er = l2_norm(a.r - b.r);
            return eu * eu + eb * eb + er * er;
        };
        auto grad_rate = [&]() {
            VectorField du = a.u - b.u;
            VectorField db_ = a.b - b.b;
            double s = 0.0;
            for (const ScalarField* f : {&du.x, &du.y, &db_.x, &db_.y}) {
                VectorField g = gradient(*f);
                s += inner_l2(g, g);
            }
            return s;
        };
        energy.push_back(twin_energy());
        diss.push_back(0.0);
        last_rate = grad_rate();
        for (size_t i = 1; i < ts.size(); ++i) {
            advance_to(a, nu1, mu1, plan.integrator, ts[i]);
            advance_to(b, nu1, mu1, plan.integrator, ts[i]);
            const double rate = grad_rate();
            acc += 0.5 * (ts[i] - last_t) * (last_rate + rate);
            last_t = ts[i];
            last_rate = rate;
            energy.push_back(twin_energy());
            diss.push_back(acc);
        }
        const double e0 = energy.front();
        double sup_ratio = 0.0, sup_env = 0.0;
        for (size_t i = 0; i < energy.size(); ++i) {
            sup_ratio = std::max(sup_ratio, energy[i] / e0);
            sup_env = std::max(sup_env, (energy[i] + diss[i]) / e0);
        }
        rep.times.push_back(ts);
        rep.energy.push_back(energy);
        rep.dissipation.push_back(diss);
        rep.sup_ratio.push_back(sup_ratio);
        if (rep.groenwall_constant == 0.0) rep.groenwall_constant = sup_env;
    }
    return rep;
}

bool InvariantLedger::all_pass() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

std::string InvariantLedger::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json j;
        j["name"] = e.name;
        j["pass"] = e.pass;
        j["observed"] = e.observed;
        j["tolerance"] = e.tolerance;
        arr.push_back(j);
    }
    nlohmann::json top;
    top["entries"] = arr;
    top["all_pass"] = all_pass();
    return top.dump(2);
}

namespace {

struct LerayHookGuard {
    explicit LerayHookGuard(bool enable) { test_hooks::corrupt_leray_symbol = enable; }
    ~LerayHookGuard() { test_hooks::corrupt_leray_symbol = false; }
};

void add(InvariantLedger& led, const std::string& name, double observed, double tol) {
    led.entries.push_back({name, observed <= tol, observed, tol});
}

void add_flag(InvariantLedger& led, const std::string& name, bool pass, double observed,
              double tol) {
    led.entries.push_back({name, pass, observed, tol});
}

double rel(double err, double scale) { return scale > 0.0 ? err / scale : err; }

void suite_for_grid(InvariantLedger& led, int n, std::uint64_t seed, bool corrupt_leray) {
    GridSpec g{n};
    const std::string tag = "n" + std::to_string(n) + ":";
    const int band = g.max_mode() / 2;

    ScalarField f = random_smooth_scalar(g, derive_seed(seed, 1), band, 1.0);
    ScalarField f2 = random_smooth_scalar(g, derive_seed(seed, 2), band, 1.0);
    VectorField v;
    v.x = random_smooth_scalar(g, derive_seed(seed, 3), band, 1.0);
    v.y = random_smooth_scalar(g, derive_seed(seed, 4), band, 1.0);
    VectorField w = random_divfree_vector(g, derive_seed(seed, 5), band, 1.0);

    // Round trip and Parseval
    ScalarField rt = inverse(transform(f));
    add(led, tag + "fft_round_trip", rel(l2_norm(rt - f), l2_norm(f)), 1e-12);
    SpectralScalar sf = transform(f);
    double spec_sum = 0.0;
    for (const auto& m : sf.modes) spec_sum += std::norm(m);
    spec_sum *= g.length * g.length;
    const double l2sq = l2_norm(f) * l2_norm(f);
    add(led, tag + "parseval", rel(std::abs(spec_sum - l2sq), l2sq), 1e-12);

    // Leray projector: annihilates gradients, idempotent, self-adjoint,
    // divergence-free output.
    {
        LerayHookGuard guard(corrupt_leray);
        VectorField pv = leray_project(v);
        add(led, tag + "leray_divergence", rel(l2_norm(divergence(pv)), l2_norm(v)), 1e-12);
        VectorField ppv = leray_project(pv);
        add(led, tag + "leray_idempotent", rel(l2_norm(ppv - pv), l2_norm(pv)), 1e-12);
        VectorField gradf = gradient(f);
        add(led, tag + "leray_kills_gradients", rel(l2_norm(leray_project(gradf)), l2_norm(gradf)),
            1e-12);
        VectorField v2;
        v2.x = f;
        v2.y = f2;
        const double lhs = inner_l2(leray_project(v), v2);
        const double rhs = inner_l2(v, leray_project(v2));
        add(led, tag + "leray_self_adjoint", rel(std::abs(lhs - rhs), std::abs(lhs) + 1e-300),
            1e-12);
    }

    // curl/gradient equality on divergence-free fields (2-D identity)
    {
        const double c = l2_norm(curl2d(w));
        VectorField gx = gradient(w.x), gy = gradient(w.y);
        const double gnorm = std::sqrt(inner_l2(gx, gx) + inner_l2(gy, gy));
        add(led, tag + "curl_equals_grad_divfree", rel(std::abs(c - gnorm), gnorm), 1e-12);
    }

    // Dyadic calculus: partition of unity, S_j consistency, Bony identity
    {
        const int jmax = besov_jmax(g);
        ScalarField sum(g);
        for (int j = -1; j <= jmax; ++j) axpy(1.0, block_Dj(f, j), sum);
        ScalarField resolved = cutoff_Sj(f, jmax + 1);
        add(led, tag + "lp_partition_of_unity", rel(l2_norm(sum - resolved), l2_norm(f)), 1e-10);

        ScalarField sj = cutoff_Sj(f, 3);
        ScalarField acc(g);
        for (int j = -1; j <= 2; ++j) axpy(1.0, block_Dj(f, j), acc);
        add(led, tag + "lp_Sj_is_block_sum", rel(l2_norm(sj - acc), l2_norm(f)), 1e-10);

        ScalarField bony = paraproduct(f, f2) + paraproduct(f2, f) + remainder(f, f2);
        ScalarField prod = multiply(f, f2);
        add(led, tag + "bony_reconstruction", rel(l2_norm(bony - prod), l2_norm(prod)), 1e-10);

        ScalarField a5 = sharp_cutoff_Aj(f, 5);
        add(led, tag + "Aj_idempotent", rel(l2_norm(sharp_cutoff_Aj(a5, 5) - a5), l2_norm(f)),
            1e-12);

        // Sobolev monotonicity in s
        const double s_low = sobolev_norm(f, 0.5), s_high = sobolev_norm(f, 1.5);
        add_flag(led, tag + "sobolev_monotone_in_s", s_high >= s_low, s_high - s_low, 0.0);
    }

    // QH1 spectral identity on a dealiased divergence-free field
    {
        VectorField u = dealias(leray_project(w));
        SpectralVector duu = [&] {
            SpectralVector t;
            t.x = dealias(transform(multiply(u.x, u.x)));
            t.y = dealias(transform(multiply(u.y, u.x)));
            SpectralVector row2;
            row2.x = dealias(transform(multiply(u.x, u.y)));
            row2.y = dealias(transform(multiply(u.y, u.y)));
            SpectralVector out;
            out.x = divergence(t);
            out.y = divergence(row2);
            return out;
        }();
        ScalarField u2(g);
        for (size_t i = 0; i < u2.values.size(); ++i)
            u2.values[i] = 0.5 * (u.x.values[i] * u.x.values[i] + u.y.values[i] * u.y.values[i]);
        SpectralVector grad_u2 = gradient(dealias(transform(u2)));
        ScalarField om = curl2d(u);
        VectorField up = perp(u);
        VectorField om_up;
        om_up.x = dealias(multiply(om, up.x));
        om_up.y = dealias(multiply(om, up.y));
        VectorField lhs = inverse(duu) - inverse(grad_u2) - om_up;
        add(led, tag + "qh1_identity", rel(l2_norm(lhs), l2_norm(inverse(duu)) + 1e-300), 1e-8);
    }

    // Coriolis does no work; magnetic energy exchange cancels
    {
        PhysParams params;
        params.epsilon = 0.5;
        PrimitiveState st(g);
        st.rho = sample(g, [](double x, double y) { return 1.0 + 0.3 * std::sin(x) * std::cos(y); });
        st.u = dealias(leray_project(w));
        st.b = dealias(leray_project(random_divfree_vector(g, derive_seed(seed, 6), band, 1.0)));
        VectorField up = perp(st.u);
        VectorField cor;
        cor.x = multiply(st.rho, up.x);
        cor.y = multiply(st.rho, up.y);
        add(led, tag + "coriolis_no_work",
            rel(std::abs(inner_l2(cor, st.u)), l2_norm(cor) * l2_norm(st.u) + 1e-300), 1e-10);

        // <div(b x b), u> + <induction nonlinearity, b> = 0
        SpectralVector lor;
        lor.x = dealias(transform(multiply(st.b.x, st.b.x)));
        lor.y = dealias(transform(multiply(st.b.y, st.b.x)));
        SpectralVector row2;
        row2.x = dealias(transform(multiply(st.b.x, st.b.y)));
        row2.y = dealias(transform(multiply(st.b.y, st.b.y)));
        SpectralVector div_bb;
        div_bb.x = divergence(lor);
        div_bb.y = divergence(row2);
        ScalarField wsc(g);
        for (size_t i = 0; i < wsc.values.size(); ++i)
            wsc.values[i] = st.u.x.values[i] * st.b.y.values[i] - st.u.y.values[i] * st.b.x.values[i];
        // induction nonlinearity is -perp_gradient(w)
        SpectralVector gw = gradient(dealias(transform(wsc)));
        VectorField ind;
        ind.x = inverse(gw.y);
        ind.y = -1.0 * inverse(gw.x);
        const double ex = inner_l2(inverse(div_bb), st.u) + inner_l2(ind, st.b);
        add(led, tag + "energy_exchange_cancels",
            rel(std::abs(ex), std::abs(inner_l2(inverse(div_bb), st.u)) + 1e-300), 1e-8);

        // Semi-discrete energy law at rho = 1
        PrimitiveState hom = st;
        for (double& r : hom.rho.values) r = 1.0;
        Tendency t = primitive_rhs(hom, params);
        DiagnosticsRecord d = diagnostics_compute(hom, params, hom.rho);
        const double de = inner_l2(hom.u, t.du) + inner_l2(hom.b, t.db);
        const double diss = d.viscous_dissipation + d.resistive_dissipation;
        add(led, tag + "energy_law_rho1", rel(std::abs(de + diss), diss), 1e-8);

        // Tendency means: integral rho and integral r conserved
        add(led, tag + "mass_mean_conserved", std::abs(mean(primitive_rhs(st, params).ds)), 1e-12);
        LimitState ls(g);
        ls.r = dealias(f);
        ls.u = st.u;
        ls.b = st.b;
        Tendency lt = limit_rhs(ls, 1.0, 1.0);
        add(led, tag + "r_mean_conserved", std::abs(mean(lt.ds)), 1e-12);
        add(led, tag + "b_mean_conserved",
            std::abs(mean(lt.db.x)) + std::abs(mean(lt.db.y)), 1e-12);

        // Limit-system energy law
        DiagnosticsRecord dl = diagnostics_compute(ls, 1.0, 1.0);
        const double del = inner_l2(ls.u, lt.du) + inner_l2(ls.b, lt.db);
        const double dissl = dl.viscous_dissipation + dl.resistive_dissipation;
        add(led, tag + "energy_law_limit", rel(std::abs(del + dissl), dissl), 1e-8);
    }

    // Commutator decay rate (needs at least two usable block levels past
    // the bandwidth of f, so j >= 2 only and jmax >= 4)
    {
        const int jmax = besov_jmax(g);
        if (jmax >= 4) {
            std::vector<double> lj, lv;
            for (int j = 2; j <= jmax - 1; ++j) {
                lj.push_back(j);
                lv.push_back(0.0);
            }
            const int pairs = 8;
            for (int p = 0; p < pairs; ++p) {
                ScalarField fs = random_smooth_scalar(g, derive_seed(seed, 70 + 2 * p), 4, 1.0);
                // reshape to a ~1/|k| spectrum so every transition annulus
                // carries comparable energy and the 2^{-j} rate is visible
                ScalarField raw =
                    random_smooth_scalar(g, derive_seed(seed, 71 + 2 * p), g.n / 2 - 8, 1.0);
                ScalarField gs = apply_radial_multiplier(
                    raw, [](double k) { return k > 0 ? (1.0 + k * k) / (1.0 + k) : 0.0; });
                for (size_t i = 0; i < lj.size(); ++i)
                    lv[i] += std::log2(l2_norm(commutator_Sj(fs, gs, static_cast<int>(lj[i])))) /
                             pairs;
            }
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (size_t i = 0; i < lj.size(); ++i) {
                sx += lj[i];
                sy += lv[i];
                sxx += lj[i] * lj[i];
                sxy += lj[i] * lv[i];
            }
            const double m = lj.size();
            const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            add_flag(led, tag + "commutator_decay_slope", slope >= -1.3 && slope <= -0.7, slope,
                     -1.0);
        }
    }

    // Inequality probes: finite constants, no violations
    for (auto kind : {InequalityKind::bernstein, InequalityKind::gagliardo_nirenberg,
                      InequalityKind::linfty_interp}) {
        ProbeReport pr = inequality_probe(kind, 20, derive_seed(seed, 9), g);
        add_flag(led, tag + "probe_" + pr.kind,
                 pr.violations == 0 && std::isfinite(pr.max_ratio) && pr.max_ratio > 0.0,
                 pr.max_ratio, 0.0);
    }
}

}  // namespace

InvariantLedger invariant_suite(const SuiteConfig& cfg) {
    InvariantLedger led;
    for (int n : cfg.grid_sizes) suite_for_grid(led, n, cfg.seed, cfg.corrupt_leray);
    return led;
}

}  // namespace rmhd
