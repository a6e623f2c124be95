#include "bl/output_writer.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bl {

namespace fs = std::filesystem;

namespace {

std::string format_short(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

double optional_or_nan(const std::optional<double>& v) {
    return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

// Write-then-rename so a rerun never leaves a torn file behind.
void commit_file(const fs::path& dir, const std::string& name,
                 const std::string& content) {
    const fs::path tmp = dir / (name + ".tmp");
    const fs::path target = dir / name;
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("write_outputs: cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write_outputs: write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string probe_csv(const RunOutputs& out) {
    std::ostringstream s;
    s << "t_day,pvi,sw_num,sw_ref\n";
    for (const ProbeSample& row : out.probe_history) {
        s << format_full(row.t) << ',' << format_full(row.pvi) << ','
          << format_full(row.sw_num) << ',' << format_full(row.sw_ref) << '\n';
    }
    return s.str();
}

std::string profile_csv(const RunOutputs& out, const SnapshotRecord& rec) {
    std::ostringstream s;
    s << "x_m,sw_fv,sw_mw,sw_ref\n";
    for (std::size_t j = 0; j < out.cell_centers.size(); ++j) {
        s << format_full(out.cell_centers[j]) << ',' << format_full(rec.fv[j])
          << ',' << format_full(rec.mw[j]) << ',' << format_full(rec.ref[j])
          << '\n';
    }
    return s.str();
}

std::string metrics_csv(const RunOutputs& out) {
    std::ostringstream s;
    s << "pvi,rmse,l1,linf,fv_mw_rmse,front_num_m,front_ref_m,front_err_m,"
         "mass_defect\n";
    for (const SnapshotRecord& rec : out.snapshots) {
        const SnapshotMetrics& m = rec.metrics;
        s << format_full(m.pvi) << ',' << format_full(m.rmse) << ','
          << format_full(m.l1) << ',' << format_full(m.linf) << ','
          << format_full(m.fv_mw_rmse) << ','
          << format_full(optional_or_nan(m.front_num)) << ','
          << format_full(optional_or_nan(m.front_ref)) << ','
          << format_full(optional_or_nan(m.front_error)) << ','
          << format_full(m.mass_defect) << '\n';
    }
    return s.str();
}

std::string detail_energy_csv(const RunOutputs& out) {
    std::ostringstream s;
    s << "pvi,level,energy\n";
    for (const SnapshotRecord& rec : out.snapshots) {
        for (std::size_t level = 0; level < rec.detail_energies.size(); ++level) {
            s << format_full(rec.pvi) << ',' << level << ','
              << format_full(rec.detail_energies[level]) << '\n';
        }
    }
    return s.str();
}

std::string summary_json(const RunOutputs& out) {
    nlohmann::ordered_json doc;
    doc["config"] =
        nlohmann::ordered_json::parse(config_to_json_string(out.config));
    doc["reference"] = {{"shock_saturation", out.shock_saturation},
                        {"breakthrough_pvi", out.breakthrough_pvi}};
    doc["results"] = {{"final_time_day", out.final_time},
                      {"final_pvi", out.final_pvi},
                      {"final_mass_defect", out.final_mass_defect},
                      {"steps", out.ledger.step_count},
                      {"integrated_inlet", out.ledger.integrated_inlet},
                      {"integrated_outlet", out.ledger.integrated_outlet},
                      {"bound_violations", out.bound_violations}};
    doc["wall_time_s"] = out.wall_time_s;
    return doc.dump(2) + "\n";
}

std::string gnuplot_probe() {
    return "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set xlabel 'PVI'\n"
           "set ylabel 'S_w at probe'\n"
           "plot 'probe_history.csv' using 2:3 with lines title 'numerical', \\\n"
           "     'probe_history.csv' using 2:4 with lines title 'reference'\n";
}

std::string gnuplot_profiles(const RunOutputs& out) {
    std::ostringstream s;
    s << "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set xlabel 'x [m]'\n"
         "set ylabel 'S_w'\n"
         "plot ";
    for (std::size_t i = 0; i < out.snapshots.size(); ++i) {
        const std::string file =
            "profiles_pvi_" + format_short(out.snapshots[i].pvi) + ".csv";
        if (i) s << ", \\\n     ";
        s << "'" << file << "' using 1:3 with lines title 'MW pvi="
          << format_short(out.snapshots[i].pvi) << "'";
        s << ", '" << file << "' using 1:4 with lines dashtype 2 notitle";
    }
    s << "\n";
    return s.str();
}

std::string gnuplot_metrics() {
    return "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set xlabel 'PVI'\n"
           "set logscale y\n"
           "plot 'metrics.csv' using 1:2 with linespoints title 'RMSE', \\\n"
           "     'metrics.csv' using 1:3 with linespoints title 'L1', \\\n"
           "     'metrics.csv' using 1:4 with linespoints title 'Linf', \\\n"
           "     'metrics.csv' using 1:5 with linespoints title 'FV-MW RMSE'\n";
}

std::string gnuplot_front_mass() {
    return "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set xlabel 'PVI'\n"
           "set multiplot layout 1,2\n"
           "set ylabel 'front error [m]'\n"
           "plot 'metrics.csv' using 1:8 with linespoints title 'front error'\n"
           "set ylabel 'mass defect'\n"
           "set logscale y\n"
           "plot 'metrics.csv' using 1:9 with linespoints title 'mass defect'\n"
           "unset multiplot\n";
}

std::string gnuplot_details() {
    return "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set xlabel 'PVI'\n"
           "set ylabel 'detail energy'\n"
           "set logscale y\n"
           "plot for [l=0:16] 'detail_energies.csv' using 1:($2==l ? $3 : 1/0) \\\n"
           "     with linespoints title sprintf('level %d', l)\n";
}

}  // namespace

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_outputs(const RunOutputs& out, const std::string& dir,
                   bool gnuplot_scripts) {
    const fs::path root(dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec && !fs::is_directory(root))
        throw std::runtime_error("write_outputs: cannot create directory " + dir);

    commit_file(root, "probe_history.csv", probe_csv(out));
    for (const SnapshotRecord& rec : out.snapshots) {
        commit_file(root, "profiles_pvi_" + format_short(rec.pvi) + ".csv",
                    profile_csv(out, rec));
    }
    commit_file(root, "metrics.csv", metrics_csv(out));
    commit_file(root, "detail_energies.csv", detail_energy_csv(out));
    commit_file(root, "run_summary.json", summary_json(out));

    if (gnuplot_scripts) {
        commit_file(root, "plot_probe.gp", gnuplot_probe());
        commit_file(root, "plot_profiles.gp", gnuplot_profiles(out));
        commit_file(root, "plot_metrics.gp", gnuplot_metrics());
        commit_file(root, "plot_front_mass.gp", gnuplot_front_mass());
        commit_file(root, "plot_detail_energies.gp", gnuplot_details());
    }
}

}  // namespace bl
