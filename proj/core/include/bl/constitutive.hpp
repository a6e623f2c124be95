#pragma once

namespace bl {

/// Rock, fluid, and geometric constants for a one-dimensional core flood.
/// Lengths are in meters, times in days, viscosities in Pa*s; saturations
/// refer to the water phase.
struct FluidRockParams {
    double core_length = 0.0;          // L [m]
    double core_diameter = 0.0;        // D [m]
    double cross_section = 0.0;        // A = pi D^2 / 4 [m^2]
    double porosity = 0.0;             // phi
    double connate_water = 0.0;        // S_wc
    double residual_oil = 0.0;         // S_or
    double initial_saturation = 0.0;   // S_init
    double injected_saturation = 0.0;  // S_inj
    double water_viscosity = 0.0;      // mu_w [Pa s]
    double oil_viscosity = 0.0;        // mu_o [Pa s]
    double corey_nw = 0.0;             // water Corey exponent
    double corey_no = 0.0;             // oil Corey exponent
    double endpoint_krw = 0.0;         // krw at S_we = 1
    double endpoint_kro = 0.0;         // kro at S_we = 0
    double injection_rate = 0.0;       // q [m^3/day]
    double darcy_velocity = 0.0;       // v = q/A [m/day]
};

// 1 mL/min expressed in m^3/day.
inline constexpr double ml_per_min_to_m3_per_day = 1.44e-3;

/// Berea core benchmark parameters. The derived quantities (cross section,
/// Darcy velocity) are computed at full precision from diameter and rate.
FluidRockParams berea_params();

/// Throws std::invalid_argument when a parameter invariant is violated.
/// Supplied cross_section and darcy_velocity must agree with pi D^2/4 and
/// q/A to 1e-6 relative.
void validate(const FluidRockParams& p);

/// S_we = (S - S_wc) / (S_inj - S_wc), clamped to [0, 1].
double effective_saturation(double s, const FluidRockParams& p);

struct RelPerms {
    double krw;
    double kro;
};

/// Endpoint-scaled Corey relative permeabilities.
RelPerms relative_permeabilities(double s, const FluidRockParams& p);

struct PhaseMobilities {
    double water;  // krw / mu_w [1/(Pa s)]
    double oil;    // kro / mu_o [1/(Pa s)]
};

PhaseMobilities mobilities(double s, const FluidRockParams& p);

/// Water fractional flow f_w = lambda_w / (lambda_w + lambda_o); monotone
/// nondecreasing in S for Corey exponents >= 1.
double fractional_flow(double s, const FluidRockParams& p);

/// Conservative transport flux F(S) = (v/phi) f_w(S) [m/day].
double transport_flux(double s, const FluidRockParams& p);

/// dF/dS evaluated analytically through the Corey chain [m/day per unit
/// saturation]; nonnegative on the admissible interval.
double flux_derivative(double s, const FluidRockParams& p);

/// max |F'| over [min(a,b), max(a,b)], from 256 uniform interior samples
/// plus both endpoints.
double max_wave_speed(double a, double b, const FluidRockParams& p);

/// Pore volumes injected at time t: v t / (phi L).
double pore_volumes_injected(double t_day, const FluidRockParams& p);

/// Inverse of pore_volumes_injected.
double time_of_pvi(double pvi, const FluidRockParams& p);

}  // namespace bl
