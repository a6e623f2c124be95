#include "bl/reference_bl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bl {

namespace {

// Dimensionless fractional-flow derivative d f_w / dS.
double fprime(double s, const FluidRockParams& p) {
    return flux_derivative(s, p) * p.porosity / p.darcy_velocity;
}

// Tangent residual g(S) = f_w'(S)(S - S_init) - (f_w(S) - f_w(S_init));
// positive on the convex branch, negative past the tangent point.
double tangent_residual(double s, const FluidRockParams& p) {
    return fprime(s, p) * (s - p.initial_saturation) -
           (fractional_flow(s, p) - fractional_flow(p.initial_saturation, p));
}

}  // namespace

double ReferenceSolution::saturation_at_speed(double speed) const {
    if (speed >= table_fprime.front()) return table_saturation.front();
    if (speed <= table_fprime.back()) return table_saturation.back();

    // table_fprime descends with saturation; find the bracketing pair.
    const auto it = std::lower_bound(table_fprime.begin(), table_fprime.end(),
                                     speed, std::greater<double>());
    const std::size_t hi_idx = static_cast<std::size_t>(it - table_fprime.begin());
    double lo = table_saturation[hi_idx - 1];
    double hi = table_saturation[hi_idx];

    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (fprime(mid, params) > speed) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ReferenceSolution build_reference(const FluidRockParams& p) {
    validate(p);

    ReferenceSolution ref;
    ref.params = p;

    // Bracket the sign change of the tangent residual.
    const double s0 = p.initial_saturation;
    const double s1 = p.injected_saturation;
    constexpr int scan = 1024;
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    double prev_s = s0 + (s1 - s0) * 1e-9;
    double prev_g = tangent_residual(prev_s, p);
    for (int i = 1; i <= scan; ++i) {
        const double s = s0 + (s1 - s0) * (static_cast<double>(i) / scan);
        const double g = tangent_residual(s, p);
        if (prev_g > 0.0 && g <= 0.0) {
            lo = prev_s;
            hi = s;
            bracketed = true;
            break;
        }
        prev_s = s;
        prev_g = g;
    }
    if (!bracketed)
        throw std::runtime_error(
            "build_reference: tangent condition has no solution for these "
            "constitutive inputs");

    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (tangent_residual(mid, p) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ref.shock_saturation = 0.5 * (lo + hi);

    const double fw_star = fractional_flow(ref.shock_saturation, p);
    const double fw_init = fractional_flow(s0, p);
    ref.shock_front_speed = p.darcy_velocity / p.porosity *
                            (fw_star - fw_init) / (ref.shock_saturation - s0);
    ref.breakthrough_pvi =
        (ref.shock_saturation - s0) / (fw_star - fw_init);

    // Rarefaction inverse cache: f_w' is monotone decreasing on [S*, S_inj]
    // for a convex-concave fractional flow.
    constexpr int table_size = 4096;
    ref.table_saturation.resize(table_size);
    ref.table_fprime.resize(table_size);
    for (int i = 0; i < table_size; ++i) {
        const double s = ref.shock_saturation +
                         (s1 - ref.shock_saturation) *
                             (static_cast<double>(i) / (table_size - 1));
        ref.table_saturation[i] = s;
        ref.table_fprime[i] = fprime(s, p);
    }
    return ref;
}

double reference_probe(const ReferenceSolution& ref, double x, double t_day) {
    const FluidRockParams& p = ref.params;
    if (t_day <= 0.0) return p.initial_saturation;
    if (x > ref.shock_front_speed * t_day) return p.initial_saturation;
    // Behind the shock: invert x = (v/phi) f_w'(S) t; at the shock position
    // itself this lands on the left (rarefaction) value S*.
    const double speed = x * p.porosity / (p.darcy_velocity * t_day);
    return std::clamp(ref.saturation_at_speed(speed), ref.shock_saturation,
                      p.injected_saturation);
}

std::vector<double> reference_profile(const ReferenceSolution& ref,
                                      const Grid& grid, double t_day) {
    std::vector<double> out(grid.cells);
    for (int j = 0; j < grid.cells; ++j) {
        out[j] = reference_probe(ref, grid.center(j), t_day);
    }
    return out;
}

}  // namespace bl
