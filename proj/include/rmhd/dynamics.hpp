#pragma once

#include <optional>
#include <vector>

#include "rmhd/spectral.hpp"

namespace rmhd {

// Density-dependent coefficient nu(rho) or mu(rho), bounded below by floor.
struct CoefficientLaw {
    enum class Kind { constant, affine, table };
    Kind kind = Kind::constant;
    double c0 = 1.0;  // constant value, or affine intercept
    double c1 = 0.0;  // affine slope
    std::vector<double> table_rho;    // monotone nodes
    std::vector<double> table_value;  // values at the nodes (linear interp)
    double floor = 1.0;

    static CoefficientLaw constant(double value, double floor_value);
    static CoefficientLaw affine(double intercept, double slope, double floor_value);
    static CoefficientLaw table(std::vector<double> rho, std::vector<double> value,
                                double floor_value);

    double eval(double rho) const;
};

ScalarField coefficient_eval(const CoefficientLaw& law, const ScalarField& rho);

struct PhysParams {
    double epsilon = 0.1;
    CoefficientLaw nu = CoefficientLaw::constant(1.0, 1.0);
    CoefficientLaw mu = CoefficientLaw::constant(1.0, 1.0);
    double rho_star = 2.0;   // density ceiling is 2*rho_star
    double rho_min = 0.05;   // hard numerical floor (no vacuum)
    // When true, the Coriolis tendency is assembled as P(r u^perp) with
    // r = (rho-1)/epsilon; algebraically equal to the stiff path for
    // quasi-homogeneous densities but free of the 1/epsilon factor.
    bool qh_cancellation = false;

    void validate() const;
};

struct PrimitiveState {
    double time = 0.0;
    ScalarField rho;
    VectorField u;
    VectorField b;

    PrimitiveState() = default;
    explicit PrimitiveState(const GridSpec& g) : rho(g), u(g), b(g) {}
    const GridSpec& grid() const { return rho.grid; }
};

struct LimitState {
    double time = 0.0;
    ScalarField r;
    VectorField u;
    VectorField b;

    LimitState() = default;
    explicit LimitState(const GridSpec& g) : r(g), u(g), b(g) {}
    const GridSpec& grid() const { return r.grid; }
};

struct Tendency {
    ScalarField ds;  // d(rho)/dt or dr/dt
    VectorField du;
    VectorField db;
};

// RHS of the primitive rotating system in velocity form: the full momentum
// tendency (advection, Coriolis scaled by rho/mean(rho), density-weighted
// diffusion and Lorentz force) is Leray-projected; nonlinear products are
// dealiased. Throws DensityFloorBreach if rho dips below rho_min.
Tendency primitive_rhs(const PrimitiveState& state, const PhysParams& params);

// RHS of the quasi-homogeneous limit system with constant coefficients.
// friedrichs_j > 0 wraps every nonlinear tendency in the sharp ball
// projection A_j (Galerkin truncation); 0 disables it.
Tendency limit_rhs(const LimitState& state, double nu1, double mu1, int friedrichs_j = 0);

// Diagnostic recovery of the projected-out gradient potential of the full
// momentum tendency (pressure combination, up to the 1/epsilon scale).
ScalarField pressure_recover(const PrimitiveState& state, const PhysParams& params);

struct DiagnosticsRecord {
    double time = 0.0;
    double kinetic_energy = 0.0;           // integral rho |u|^2 / 2
    double magnetic_energy = 0.0;          // integral |b|^2 / 2
    double viscous_dissipation = 0.0;      // integral nu(rho) |grad u|^2
    double resistive_dissipation = 0.0;    // integral mu(rho) |curl b|^2
    double div_u_norm = 0.0;
    double div_b_norm = 0.0;
    double r_l2 = 0.0;
    double r_l4 = 0.0;
    double r_linf = 0.0;
    double sigma_sobolev_proxy = 0.0;      // ||(rho - rho0)/epsilon||_{H^{-3-delta}}
    double rho0u_constraint = 0.0;         // ||div(rho0 u)||_{H^{-1}}
};

DiagnosticsRecord diagnostics_compute(const PrimitiveState& state, const PhysParams& params,
                                      const ScalarField& rho0, double delta = 0.1);
DiagnosticsRecord diagnostics_compute(const LimitState& state, double nu1, double mu1,
                                      double delta = 0.1);

}  // namespace rmhd
