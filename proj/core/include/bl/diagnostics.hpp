#pragma once

#include <optional>
#include <vector>

#include "bl/fv_transport.hpp"
#include "bl/grid.hpp"

namespace bl {

struct ErrorMetrics {
    double rmse = 0.0;
    double l1 = 0.0;
    double linf = 0.0;
};

/// Discrete snapshot errors between two equal-length profiles:
/// rmse = sqrt(sum e^2 / N), l1 = sum |e| / N, linf = max |e|.
ErrorMetrics error_metrics(const std::vector<double>& num,
                           const std::vector<double>& ref);

/// RMSE between the conservative finite-volume state and the multiwavelet
/// reconstruction.
double fv_mw_rmse(const std::vector<double>& fv, const std::vector<double>& mw);

/// Largest x where the piecewise-linear interpolant of cell-center values
/// crosses the threshold, scanning from the outlet toward the inlet.
/// Absent when no segment crosses.
std::optional<double> front_location(const std::vector<double>& profile,
                                     const Grid& grid, double threshold);

/// |change in stored water content - net time-integrated boundary flux|.
double mass_balance_defect(const SaturationState& initial,
                           const SaturationState& final_state,
                           const FluxLedger& ledger, const Grid& grid);

/// Dyadic detail energies by repeated coarse-fine splitting: coarse values
/// are pairwise means, details pairwise half-differences. Entry l is E_l;
/// larger l is finer scale (the first split of the full vector lands at
/// l = log2(N) - 1).
std::vector<double> detail_energies(const std::vector<double>& values);

double total_variation(const std::vector<double>& values);

/// Per-snapshot validation record.
struct SnapshotMetrics {
    double pvi = 0.0;
    double rmse = 0.0;
    double l1 = 0.0;
    double linf = 0.0;
    double fv_mw_rmse = 0.0;
    std::optional<double> front_num;   // [m]
    std::optional<double> front_ref;   // [m]
    std::optional<double> front_error; // [m], present when both fronts are
    double mass_defect = 0.0;          // [m * saturation]
};

}  // namespace bl
