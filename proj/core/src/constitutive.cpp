#include "bl/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bl {

namespace {

// Real power with fast paths for small integer exponents; Corey exponents
// are usually 1..4 and the flux kernels sit in the solver's hot loop.
double corey_pow(double x, double n) {
    const double r = std::round(n);
    if (r == n && r >= 0.0 && r <= 8.0) {
        double acc = 1.0;
        for (int i = 0; i < static_cast<int>(r); ++i) acc *= x;
        return acc;
    }
    return std::pow(x, n);
}

// Saturations drifting outside [S_wc, S_inj] by round-off are clamped so
// non-integer exponents never see a negative base.
double clamp_saturation(double s, const FluidRockParams& p) {
    return std::clamp(s, p.connate_water, p.injected_saturation);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("FluidRockParams: " + what);
}

}  // namespace

FluidRockParams berea_params() {
    FluidRockParams p;
    p.core_length = 0.1524;
    p.core_diameter = 0.0381;
    p.cross_section = M_PI * p.core_diameter * p.core_diameter / 4.0;
    p.porosity = 0.20;
    p.connate_water = 0.10;
    p.residual_oil = 0.20;
    p.initial_saturation = 0.10;
    p.injected_saturation = 0.80;
    p.water_viscosity = 1.0e-3;
    p.oil_viscosity = 4.0e-3;
    p.corey_nw = 2.0;
    p.corey_no = 2.0;
    p.endpoint_krw = 1.0;
    p.endpoint_kro = 1.0;
    p.injection_rate = 1.0 * ml_per_min_to_m3_per_day;
    p.darcy_velocity = p.injection_rate / p.cross_section;
    return p;
}

void validate(const FluidRockParams& p) {
    require(p.core_length > 0.0, "core_length must be positive");
    require(p.porosity > 0.0 && p.porosity < 1.0, "porosity must lie in (0,1)");
    require(p.connate_water >= 0.0, "connate_water must be nonnegative");
    require(p.residual_oil >= 0.0 && p.residual_oil < 1.0,
            "residual_oil must lie in [0,1)");
    require(p.injected_saturation > p.connate_water,
            "injected_saturation must exceed connate_water");
    require(p.injected_saturation <= 1.0, "injected_saturation must be <= 1");
    require(p.initial_saturation >= p.connate_water &&
                p.initial_saturation < p.injected_saturation,
            "initial_saturation must lie in [connate_water, injected_saturation)");
    require(p.water_viscosity > 0.0 && p.oil_viscosity > 0.0,
            "viscosities must be positive");
    require(p.corey_nw >= 1.0 && p.corey_no >= 1.0,
            "Corey exponents must be >= 1");
    require(p.endpoint_krw > 0.0 && p.endpoint_krw <= 1.0,
            "endpoint_krw must lie in (0,1]");
    require(p.endpoint_kro > 0.0 && p.endpoint_kro <= 1.0,
            "endpoint_kro must lie in (0,1]");
    require(p.darcy_velocity > 0.0, "darcy_velocity must be positive");

    if (p.core_diameter > 0.0 && p.cross_section > 0.0) {
        const double a = M_PI * p.core_diameter * p.core_diameter / 4.0;
        require(std::abs(p.cross_section - a) <= 1e-6 * a,
                "cross_section inconsistent with pi D^2/4");
    }
    if (p.injection_rate > 0.0 && p.cross_section > 0.0) {
        const double v = p.injection_rate / p.cross_section;
        require(std::abs(p.darcy_velocity - v) <= 1e-6 * v,
                "darcy_velocity inconsistent with q/A");
    }
}

double effective_saturation(double s, const FluidRockParams& p) {
    const double span = p.injected_saturation - p.connate_water;
    if (span <= 0.0)
        throw std::invalid_argument(
            "effective_saturation: injected_saturation <= connate_water");
    s = clamp_saturation(s, p);
    return (s - p.connate_water) / span;
}

RelPerms relative_permeabilities(double s, const FluidRockParams& p) {
    const double swe = effective_saturation(s, p);
    return {p.endpoint_krw * corey_pow(swe, p.corey_nw),
            p.endpoint_kro * corey_pow(1.0 - swe, p.corey_no)};
}

PhaseMobilities mobilities(double s, const FluidRockParams& p) {
    if (p.water_viscosity <= 0.0 || p.oil_viscosity <= 0.0)
        throw std::invalid_argument("mobilities: viscosities must be positive");
    const RelPerms kr = relative_permeabilities(s, p);
    return {kr.krw / p.water_viscosity, kr.kro / p.oil_viscosity};
}

double fractional_flow(double s, const FluidRockParams& p) {
    const PhaseMobilities lam = mobilities(s, p);
    const double total = lam.water + lam.oil;
    if (total <= 0.0)
        throw std::domain_error("fractional_flow: degenerate total mobility");
    return lam.water / total;
}

double transport_flux(double s, const FluidRockParams& p) {
    return p.darcy_velocity / p.porosity * fractional_flow(s, p);
}

double flux_derivative(double s, const FluidRockParams& p) {
    const double span = p.injected_saturation - p.connate_water;
    const double swe = effective_saturation(s, p);
    const RelPerms kr = relative_permeabilities(s, p);
    const double lw = kr.krw / p.water_viscosity;
    const double lo = kr.kro / p.oil_viscosity;

    // d lambda / dS through the chain rule; dS_we/dS = 1/span.
    const double dlw = p.endpoint_krw * p.corey_nw *
                       corey_pow(swe, p.corey_nw - 1.0) /
                       (p.water_viscosity * span);
    const double dlo = -p.endpoint_kro * p.corey_no *
                       corey_pow(1.0 - swe, p.corey_no - 1.0) /
                       (p.oil_viscosity * span);

    const double total = lw + lo;
    // dlw >= 0 and dlo <= 0, so both products below are nonnegative and the
    // quotient cannot go negative even in floating point.
    const double dfw = (dlw * lo - lw * dlo) / (total * total);
    return p.darcy_velocity / p.porosity * dfw;
}

double max_wave_speed(double a, double b, const FluidRockParams& p) {
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    double best = std::max(std::abs(flux_derivative(lo, p)),
                           std::abs(flux_derivative(hi, p)));
    constexpr int samples = 256;
    const double step = (hi - lo) / (samples + 1);
    for (int i = 1; i <= samples; ++i) {
        best = std::max(best, std::abs(flux_derivative(lo + i * step, p)));
    }
    return best;
}

double pore_volumes_injected(double t_day, const FluidRockParams& p) {
    return p.darcy_velocity * t_day / (p.porosity * p.core_length);
}

double time_of_pvi(double pvi, const FluidRockParams& p) {
    return pvi * p.porosity * p.core_length / p.darcy_velocity;
}

}  // namespace bl
