#pragma once

#include <vector>

#include "bl/diagnostics.hpp"
#include "bl/fv_transport.hpp"
#include "bl/grid.hpp"
#include "bl/reference_bl.hpp"
#include "bl/run_config.hpp"

namespace bl {

struct ProbeSample {
    double t = 0.0;    // [day]
    double pvi = 0.0;
    double sw_num = 0.0;  // finite-volume value of the probe cell
    double sw_ref = 0.0;  // analytic value at the probe location
};

struct SnapshotRecord {
    double pvi = 0.0;
    double t = 0.0;
    std::vector<double> fv;   // conservative state
    std::vector<double> mw;   // multiwavelet reconstruction (= fv when disabled)
    std::vector<double> ref;  // analytic profile at cell centers
    SnapshotMetrics metrics;
    std::vector<double> detail_energies;  // indexed by dyadic level
};

struct RunOutputs {
    RunConfig config;
    std::vector<double> cell_centers;  // [m]
    double dx = 0.0;

    std::vector<ProbeSample> probe_history;
    std::vector<SnapshotRecord> snapshots;
    FluxLedger ledger;

    double shock_saturation = 0.0;
    double breakthrough_pvi = 0.0;
    double final_time = 0.0;         // [day]
    double final_pvi = 0.0;
    double final_mass_defect = 0.0;  // [m * saturation]
    long bound_violations = 0;
    double wall_time_s = 0.0;
};

/// Runs the conservative transport loop with snapshot scheduling, the
/// multiwavelet pipeline, and all diagnostics. The loop lands exactly on
/// every snapshot time (never interpolates) and records the probe on every
/// accepted step. Deterministic: identical configs give identical outputs.
RunOutputs run_simulation(const RunConfig& cfg);

/// Same, but fills the caller's record progressively so that everything
/// accumulated up to a solver failure survives the thrown exception and
/// can still be flushed to disk.
void run_simulation_into(const RunConfig& cfg, RunOutputs& out);

/// Index of the cell whose center is nearest to x, ties toward the lower
/// index.
int probe_cell_index(const Grid& grid, double x);

}  // namespace bl
