#include "bl/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "bl/mw_interval.hpp"

namespace bl {

int probe_cell_index(const Grid& grid, double x) {
    int best = 0;
    double best_dist = std::abs(grid.center(0) - x);
    for (int j = 1; j < grid.cells; ++j) {
        const double d = std::abs(grid.center(j) - x);
        if (d < best_dist) {  // strict: ties stay at the lower index
            best = j;
            best_dist = d;
        }
    }
    return best;
}

namespace {

SnapshotRecord make_snapshot(const RunConfig& cfg, const Grid& grid,
                             const ReferenceSolution& ref,
                             const SaturationState& state,
                             const SaturationState& initial,
                             const FluxLedger& ledger) {
    const NumericsConfig& num = cfg.numerics;
    SnapshotRecord rec;
    rec.t = state.time;
    rec.pvi = state.pvi(cfg.fluid_rock);
    rec.fv = state.averages;

    if (num.mw.enabled) {
        const MWTree tree =
            project_cell_averages(state, grid, num.mw.order, num.mw.precision);
        rec.mw = reconstruct_cell_averages(tree, grid.cells);
    } else {
        rec.mw = rec.fv;
    }
    rec.ref = reference_profile(ref, grid, state.time);

    const ErrorMetrics err = error_metrics(rec.mw, rec.ref);
    rec.metrics.pvi = rec.pvi;
    rec.metrics.rmse = err.rmse;
    rec.metrics.l1 = err.l1;
    rec.metrics.linf = err.linf;
    rec.metrics.fv_mw_rmse = fv_mw_rmse(rec.fv, rec.mw);
    rec.metrics.front_num = front_location(rec.mw, grid, num.front_threshold);
    rec.metrics.front_ref = front_location(rec.ref, grid, num.front_threshold);
    if (rec.metrics.front_num && rec.metrics.front_ref)
        rec.metrics.front_error =
            std::abs(*rec.metrics.front_num - *rec.metrics.front_ref);
    rec.metrics.mass_defect = mass_balance_defect(initial, state, ledger, grid);

    rec.detail_energies = detail_energies(rec.mw);
    return rec;
}

}  // namespace

RunOutputs run_simulation(const RunConfig& cfg) {
    RunOutputs out;
    run_simulation_into(cfg, out);
    return out;
}

void run_simulation_into(const RunConfig& cfg, RunOutputs& out) {
    validate(cfg);
    const auto wall_start = std::chrono::steady_clock::now();

    const FluidRockParams& p = cfg.fluid_rock;
    const NumericsConfig& num = cfg.numerics;
    const Grid grid(p.core_length, num.cells);
    const ReferenceSolution ref = build_reference(p);

    out = RunOutputs{};
    out.config = cfg;
    out.cell_centers = grid.centers();
    out.dx = grid.dx;
    out.shock_saturation = ref.shock_saturation;
    out.breakthrough_pvi = ref.breakthrough_pvi;

    SaturationState state = uniform_state(grid, p.initial_saturation);
    const SaturationState initial = state;
    FluxLedger ledger;

    const int probe_cell = probe_cell_index(grid, num.probe_x);
    const double admissible_lo = std::min(p.initial_saturation, p.injected_saturation);
    const double admissible_hi = std::max(p.initial_saturation, p.injected_saturation);

    const auto record_probe = [&](const SaturationState& s) {
        out.probe_history.push_back({s.time, s.pvi(p), s.averages[probe_cell],
                                     reference_probe(ref, num.probe_x, s.time)});
    };
    record_probe(state);

    long steps_since_filter = 0;
    const StepObserver observer = [&](SaturationState& s, FluxLedger&) {
        record_probe(s);
        if (num.mw.enabled && num.mw.postfilter_cadence > 0 &&
            ++steps_since_filter >= num.mw.postfilter_cadence) {
            steps_since_filter = 0;
            const MWTree tree =
                project_cell_averages(s, grid, num.mw.order, num.mw.precision);
            s.averages =
                post_filter(s.averages, reconstruct_cell_averages(tree, grid.cells),
                            num.mw.theta, admissible_lo, admissible_hi);
        }
    };

    AdvanceOptions options;
    options.flux = num.flux;
    options.cfl = num.cfl;

    // Must-hit schedule: every snapshot PVI plus the end time, each landed
    // on exactly. An empty snapshot list degenerates to one snapshot of the
    // end state (the initial state when pvi_end is zero).
    std::vector<double> schedule = num.snapshot_pvis;
    if (schedule.empty()) schedule.push_back(num.pvi_end);

    for (double pvi : schedule) {
        out.bound_violations += advance_to(state, ledger, time_of_pvi(pvi, p),
                                           grid, p, options, observer);
        out.snapshots.push_back(
            make_snapshot(cfg, grid, ref, state, initial, ledger));
    }
    out.bound_violations += advance_to(
        state, ledger, time_of_pvi(num.pvi_end, p), grid, p, options, observer);

    out.ledger = ledger;
    out.final_time = state.time;
    out.final_pvi = state.pvi(p);
    out.final_mass_defect = mass_balance_defect(initial, state, ledger, grid);

    out.wall_time_s = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - wall_start)
                          .count();
}

}  // namespace bl
