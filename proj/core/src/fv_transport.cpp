#include "bl/fv_transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bl {

namespace {

// Minimum of F over [lo, hi]: coarse scan, then golden-section refinement
// of the best sample's bracket. The endpoints are evaluated at their exact
// arguments and interior refinements must beat them by more than round-off,
// so for a monotone flux the result is bitwise the upwind endpoint value.
double bracket_minimum(double lo, double hi, const FluidRockParams& p,
                       double sign) {
    const auto f = [&](double s) { return sign * transport_flux(s, p); };

    constexpr int samples = 32;
    const double step = (hi - lo) / samples;
    const auto sample_at = [&](int i) {
        if (i <= 0) return lo;
        if (i >= samples) return hi;
        return lo + i * step;
    };

    double best = f(lo);
    int best_index = 0;
    for (int i = 1; i <= samples; ++i) {
        const double v = f(sample_at(i));
        if (v < best) {
            best = v;
            best_index = i;
        }
    }

    // Refine around the best sample; the neighbors bracket any smooth
    // interior minimum resolved by the scan.
    double a = sample_at(best_index - 1);
    double b = sample_at(best_index + 1);
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 64 && (b - a) > 1e-14; ++iter) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double refined = std::min(f1, f2);
    const double guard = 1e-12 * p.darcy_velocity / p.porosity;
    if (refined < best - guard) best = refined;
    return sign * best;
}

}  // namespace

FluxKind flux_kind_from_string(const std::string& name) {
    if (name == "godunov") return FluxKind::godunov;
    if (name == "rusanov") return FluxKind::rusanov;
    throw std::invalid_argument("unknown flux kind: " + name);
}

std::string to_string(FluxKind kind) {
    return kind == FluxKind::godunov ? "godunov" : "rusanov";
}

SaturationState uniform_state(const Grid& grid, double saturation) {
    SaturationState state;
    state.averages.assign(grid.cells, saturation);
    state.time = 0.0;
    return state;
}

double godunov_flux(double a, double b, const FluidRockParams& p) {
    if (a == b) return transport_flux(a, p);
    if (a < b) return bracket_minimum(a, b, p, 1.0);
    return bracket_minimum(b, a, p, -1.0);
}

double rusanov_flux(double a, double b, const FluidRockParams& p) {
    const double alpha = max_wave_speed(a, b, p);
    return 0.5 * (transport_flux(a, p) + transport_flux(b, p)) -
           0.5 * alpha * (b - a);
}

double interface_flux(double a, double b, const FluidRockParams& p,
                      FluxKind kind) {
    return kind == FluxKind::godunov ? godunov_flux(a, b, p)
                                     : rusanov_flux(a, b, p);
}

ResidualResult residual(const SaturationState& state, const Grid& grid,
                        const FluidRockParams& p, FluxKind kind) {
    const int n = grid.cells;
    if (static_cast<int>(state.averages.size()) != n)
        throw std::invalid_argument("residual: state length does not match grid");

    const std::vector<double>& s = state.averages;
    std::vector<double> fhat(n + 1);
    fhat[0] = interface_flux(p.injected_saturation, s[0], p, kind);
    for (int j = 1; j < n; ++j) {
        fhat[j] = interface_flux(s[j - 1], s[j], p, kind);
    }
    // Outflow closure F(S_N, S_N); consistency makes it F(S_N) for either flux.
    fhat[n] = transport_flux(s[n - 1], p);

    ResidualResult out;
    out.rate.resize(n);
    for (int j = 0; j < n; ++j) {
        out.rate[j] = -(fhat[j + 1] - fhat[j]) / grid.dx;
    }
    out.inlet_flux = fhat[0];
    out.outlet_flux = fhat[n];
    return out;
}

StepResult ssprk2_step(SaturationState& state, double dt, const Grid& grid,
                       const FluidRockParams& p, FluxKind kind) {
    const int n = grid.cells;
    const ResidualResult r0 = residual(state, grid, p, kind);

    SaturationState stage = state;
    for (int j = 0; j < n; ++j) {
        stage.averages[j] = state.averages[j] + dt * r0.rate[j];
    }
    const ResidualResult r1 = residual(stage, grid, p, kind);

    for (int j = 0; j < n; ++j) {
        state.averages[j] = 0.5 * state.averages[j] +
                            0.5 * (stage.averages[j] + dt * r1.rate[j]);
    }
    state.time += dt;

    StepResult result;
    result.inlet_contribution = dt * 0.5 * (r0.inlet_flux + r1.inlet_flux);
    result.outlet_contribution = dt * 0.5 * (r0.outlet_flux + r1.outlet_flux);

    const double lo = std::min(p.initial_saturation, p.injected_saturation);
    const double hi = std::max(p.initial_saturation, p.injected_saturation);
    for (int j = 0; j < n; ++j) {
        if (state.averages[j] < lo - 1e-12 || state.averages[j] > hi + 1e-12) {
            result.bounds_ok = false;
            break;
        }
    }
    return result;
}

double cfl_dt(const SaturationState& state, const FluidRockParams& p,
              const Grid& grid, double cfl, double fallback_dt) {
    if (cfl <= 0.0 || cfl > 1.0)
        throw std::invalid_argument("cfl_dt: cfl must lie in (0,1]");
    const auto [lo_it, hi_it] =
        std::minmax_element(state.averages.begin(), state.averages.end());
    const double lo = std::min(*lo_it, p.injected_saturation);
    const double hi = std::max(*hi_it, p.injected_saturation);
    const double alpha = max_wave_speed(lo, hi, p);
    if (alpha <= 0.0) return fallback_dt;
    return cfl * grid.dx / alpha;
}

long advance_to(SaturationState& state, FluxLedger& ledger, double t_target,
                const Grid& grid, const FluidRockParams& p,
                const AdvanceOptions& options, const StepObserver& on_step) {
    if (t_target < state.time - 1e-14)
        throw std::invalid_argument("advance_to: target precedes current time");

    const double fallback =
        options.fallback_dt > 0.0
            ? options.fallback_dt
            : options.cfl * grid.dx * p.porosity / p.darcy_velocity;

    long steps = 0;
    long violations = 0;
    while (state.time < t_target - 1e-15) {
        double dt = cfl_dt(state, p, grid, options.cfl, fallback);
        bool landing = false;
        if (state.time + dt >= t_target) {
            dt = t_target - state.time;
            landing = true;
        }
        const StepResult step = ssprk2_step(state, dt, grid, p, options.flux);
        if (landing) state.time = t_target;
        if (!step.bounds_ok) ++violations;

        ledger.integrated_inlet += step.inlet_contribution;
        ledger.integrated_outlet += step.outlet_contribution;
        ledger.step_count += 1;

        for (double v : state.averages) {
            if (!std::isfinite(v))
                throw std::runtime_error("advance_to: state became nonfinite");
        }
        if (on_step) on_step(state, ledger);

        if (++steps > options.max_steps)
            throw std::runtime_error("advance_to: step budget exceeded");
    }
    return violations;
}

}  // namespace bl
