#pragma once

#include <vector>

#include "bl/constitutive.hpp"
#include "bl/grid.hpp"

namespace bl {

/// Analytic Buckley-Leverett solution from the Welge tangent construction:
/// a shock from S_init up to S*, trailed by a rarefaction fan through
/// S_inj. Immutable after build_reference; queries are pure.
struct ReferenceSolution {
    FluidRockParams params;

    double shock_saturation = 0.0;   // S*
    double shock_front_speed = 0.0;  // sigma [m/day]
    double breakthrough_pvi = 0.0;   // shock reaches x = L

    // Monotone rarefaction table: saturation ascending on [S*, S_inj],
    // dimensionless f_w' descending. Queries bracket here and refine by
    // bisection, since profile sampling is the hot path of the metrics.
    std::vector<double> table_saturation;
    std::vector<double> table_fprime;

    /// Saturation on the rarefaction branch whose characteristic moves at
    /// the given dimensionless speed f_w' (d f_w / dS); clipped to
    /// [S*, S_inj].
    double saturation_at_speed(double fprime) const;
};

/// Solves the tangent condition f_w'(S*) (S* - S_init) = f_w(S*) - f_w(S_init)
/// by bisection to 1e-12 and tabulates the rarefaction inverse. Throws
/// std::runtime_error when no tangent point exists.
ReferenceSolution build_reference(const FluidRockParams& p);

/// Point value of the self-similar solution at position x and time t.
double reference_probe(const ReferenceSolution& ref, double x, double t_day);

/// Profile sampled at the grid cell centers.
std::vector<double> reference_profile(const ReferenceSolution& ref,
                                      const Grid& grid, double t_day);

}  // namespace bl
