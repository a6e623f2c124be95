#pragma once

#include <string>
#include <vector>

#include "bl/constitutive.hpp"
#include "bl/fv_transport.hpp"

namespace bl {

struct MWConfig {
    int order = 8;
    double precision = 1e-7;     // compression threshold; 0 disables pruning
    int postfilter_cadence = 0;  // accepted steps between filter applications; 0 = off
    double theta = 0.10;         // relaxation factor of the post-filter
    bool enabled = true;
};

struct NumericsConfig {
    int cells = 512;
    double cfl = 0.85;
    FluxKind flux = FluxKind::godunov;
    double pvi_end = 1.5;
    std::vector<double> snapshot_pvis = {0.05, 0.10, 0.20, 0.35, 0.50, 0.80, 1.20};
    double probe_x = 0.0762;  // defaults to L/2 of the loaded core
    double front_threshold = 0.5;
    MWConfig mw;
};

/// Full run description. Defaults reproduce the Berea benchmark; a run is
/// deterministic given a config (there is no seed).
struct RunConfig {
    FluidRockParams fluid_rock = berea_params();
    NumericsConfig numerics;
    std::string output_dir = "out";
};

/// Loads a UTF-8 JSON config. Missing keys fall back to the Berea
/// defaults; unknown keys are rejected. The injection_rate key is in
/// mL/min and is converted to m^3/day; cross_section and darcy_velocity
/// may be omitted and are then derived from diameter and rate.
RunConfig parse_config(const std::string& path);

/// Same, from an in-memory JSON document.
RunConfig parse_config_string(const std::string& text);

/// Serializes the config (full precision, injection_rate back in mL/min).
std::string config_to_json_string(const RunConfig& cfg, int indent = 2);

/// Throws std::invalid_argument naming the offending key.
void validate(const RunConfig& cfg);

}  // namespace bl
