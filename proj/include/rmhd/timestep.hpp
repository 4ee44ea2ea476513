#pragma once

#include <functional>
#include <optional>

#include "rmhd/dynamics.hpp"

namespace rmhd {

enum class Scheme { imex_rk2, imex_rk3 };

// Integrating-factor RK: the floor diffusion nu_* Delta / mu_* Delta is
// integrated exactly in spectral space, everything else is explicit.
struct IntegratorConfig {
    Scheme scheme = Scheme::imex_rk3;
    std::optional<double> dt;   // exactly one of dt / cfl
    std::optional<double> cfl;  // in (0, 1]
    double t_end = 1.0;
    double c_cor = 0.5;  // dt <= c_cor * epsilon on the stiff Coriolis path
    bool dealias = true;
    int invariant_check_every = 1;
    double dt_max = 0.1;
    int friedrichs_j = 0;  // limit system only; 0 = untruncated

    void validate() const;
};

struct StepReport {
    double time = 0.0;
    double dt_used = 0.0;
    double energy_balance_residual = 0.0;
    double div_u_residual = 0.0;
    double div_b_residual = 0.0;
    double floor_margin = 0.0;  // min rho - rho_min
};

double cfl_dt(const PrimitiveState& state, const PhysParams& params, const IntegratorConfig& cfg);
double cfl_dt(const LimitState& state, double nu1, double mu1, const IntegratorConfig& cfg);

StepReport imex_step(PrimitiveState& state, const PhysParams& params, const IntegratorConfig& cfg,
                     double dt);
StepReport imex_step(LimitState& state, double nu1, double mu1, const IntegratorConfig& cfg,
                     double dt);

using PrimitiveSink = std::function<void(const PrimitiveState&, const StepReport&)>;
using LimitSink = std::function<void(const LimitState&, const StepReport&)>;

// Advance to t_end exactly (last step clipped); the sink fires every
// invariant_check_every steps and after the final step.
void advance_to(PrimitiveState& state, const PhysParams& params, const IntegratorConfig& cfg,
                double t_end, const PrimitiveSink& sink = nullptr);
void advance_to(LimitState& state, double nu1, double mu1, const IntegratorConfig& cfg,
                double t_end, const LimitSink& sink = nullptr);

}  // namespace rmhd
