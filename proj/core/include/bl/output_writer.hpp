#pragma once

#include <string>

#include "bl/simulation.hpp"

namespace bl {

/// Writes the run's data products into dir (created if missing):
///   probe_history.csv         t_day,pvi,sw_num,sw_ref
///   profiles_pvi_<value>.csv  x_m,sw_fv,sw_mw,sw_ref   (one per snapshot)
///   metrics.csv               pvi,rmse,l1,linf,fv_mw_rmse,front_num_m,
///                             front_ref_m,front_err_m,mass_defect
///   detail_energies.csv       pvi,level,energy
///   run_summary.json          config echo, reference quantities, ledger
/// Numbers are written with 17 significant digits; absent front positions
/// are written as nan. Files are written to a temporary name and renamed,
/// so a rerun replaces them atomically. With gnuplot_scripts, ready-to-run
/// plot scripts referencing the CSVs are added.
void write_outputs(const RunOutputs& out, const std::string& dir,
                   bool gnuplot_scripts = false);

/// 17-significant-digit representation (round-trips a double exactly).
std::string format_full(double value);

}  // namespace bl
