#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bl/constitutive.hpp"
#include "bl/grid.hpp"

namespace bl {

enum class FluxKind { godunov, rusanov };

FluxKind flux_kind_from_string(const std::string& name);
std::string to_string(FluxKind kind);

/// Cell-average saturation field at a simulation time.
struct SaturationState {
    std::vector<double> averages;
    double time = 0.0;  // [day]

    double pvi(const FluidRockParams& p) const {
        return pore_volumes_injected(time, p);
    }
};

SaturationState uniform_state(const Grid& grid, double saturation);

/// Time-integrated boundary fluxes, accumulated with the SSPRK2 stage
/// weighting so the conservation defect telescopes to round-off.
struct FluxLedger {
    double integrated_inlet = 0.0;   // [m * saturation]
    double integrated_outlet = 0.0;  // [m * saturation]
    long step_count = 0;
};

/// Godunov flux: min of F over [a,b] when a <= b, max over [b,a] otherwise.
/// Implemented by bracket sampling with golden-section refinement so that
/// non-monotone fluxes stay correct; for monotone F it returns the exact
/// upwind value F(a).
double godunov_flux(double a, double b, const FluidRockParams& p);

/// Rusanov flux 0.5 (F(a)+F(b)) - 0.5 alpha(a,b) (b-a) with alpha from
/// max_wave_speed.
double rusanov_flux(double a, double b, const FluidRockParams& p);

double interface_flux(double a, double b, const FluidRockParams& p, FluxKind kind);

struct ResidualResult {
    std::vector<double> rate;  // dS/dt per cell [saturation/day]
    double inlet_flux = 0.0;   // F_hat at x_{1/2} [m/day]
    double outlet_flux = 0.0;  // F_hat at x_{N+1/2} [m/day]
};

/// Semidiscrete conservative residual R_j = -(F_{j+1/2} - F_{j-1/2})/dx.
/// The inlet enters through F(S_inj, S_1); the outlet uses the outflow
/// closure F(S_N, S_N) = F(S_N).
ResidualResult residual(const SaturationState& state, const Grid& grid,
                        const FluidRockParams& p, FluxKind kind);

struct StepResult {
    double inlet_contribution = 0.0;   // dt-weighted inlet flux [m * saturation]
    double outlet_contribution = 0.0;  // dt-weighted outlet flux
    bool bounds_ok = true;             // false when a cell exits the admissible
                                       // interval by more than 1e-12
};

/// One SSPRK2 step; advances state.time by dt.
StepResult ssprk2_step(SaturationState& state, double dt, const Grid& grid,
                       const FluidRockParams& p, FluxKind kind);

/// CFL-limited step: cfl * dx / alpha_max with alpha_max taken over the
/// state range extended by the inlet saturation. Returns fallback_dt when
/// the wave speed degenerates to zero.
double cfl_dt(const SaturationState& state, const FluidRockParams& p,
              const Grid& grid, double cfl, double fallback_dt);

struct AdvanceOptions {
    FluxKind flux = FluxKind::godunov;
    double cfl = 0.85;
    double fallback_dt = 0.0;  // 0 => cfl * dx * phi / v
    long max_steps = 50'000'000;
};

/// Called after every accepted step; may mutate the state (e.g. to apply
/// the multiwavelet post-filter).
using StepObserver = std::function<void(SaturationState&, FluxLedger&)>;

/// Advances the state to t_target, clamping the final step so the state
/// lands on the target exactly. Returns the number of steps that tripped
/// the bound check (a CFL breach indicator). Throws std::runtime_error if
/// the state turns nonfinite.
long advance_to(SaturationState& state, FluxLedger& ledger, double t_target,
                const Grid& grid, const FluidRockParams& p,
                const AdvanceOptions& options,
                const StepObserver& on_step = {});

}  // namespace bl
