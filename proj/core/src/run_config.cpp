#include "bl/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bl {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& block) {
    for (const auto& item : obj.items()) {
        if (!known.count(item.key()))
            throw std::invalid_argument("config: unknown key '" + item.key() +
                                        "' in " + block);
    }
}

template <typename T>
void read_into(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

void parse_fluid_rock(const json& obj, FluidRockParams& p) {
    reject_unknown_keys(
        obj,
        {"core_length", "core_diameter", "cross_section", "porosity",
         "connate_water", "residual_oil", "initial_saturation",
         "injected_saturation", "water_viscosity", "oil_viscosity", "corey_nw",
         "corey_no", "endpoint_krw", "endpoint_kro", "injection_rate",
         "darcy_velocity"},
        "fluid_rock");

    read_into(obj, "core_length", p.core_length);
    read_into(obj, "core_diameter", p.core_diameter);
    read_into(obj, "porosity", p.porosity);
    read_into(obj, "connate_water", p.connate_water);
    read_into(obj, "residual_oil", p.residual_oil);
    read_into(obj, "initial_saturation", p.initial_saturation);
    read_into(obj, "injected_saturation", p.injected_saturation);
    read_into(obj, "water_viscosity", p.water_viscosity);
    read_into(obj, "oil_viscosity", p.oil_viscosity);
    read_into(obj, "corey_nw", p.corey_nw);
    read_into(obj, "corey_no", p.corey_no);
    read_into(obj, "endpoint_krw", p.endpoint_krw);
    read_into(obj, "endpoint_kro", p.endpoint_kro);

    // injection_rate arrives in mL/min; everything downstream is m^3/day.
    const bool has_rate = obj.contains("injection_rate");
    const bool has_velocity = obj.contains("darcy_velocity");
    if (has_rate)
        p.injection_rate =
            obj.at("injection_rate").get<double>() * ml_per_min_to_m3_per_day;

    if (obj.contains("cross_section")) {
        p.cross_section = obj.at("cross_section").get<double>();
    } else if (p.core_diameter > 0.0) {
        p.cross_section = M_PI * p.core_diameter * p.core_diameter / 4.0;
    }

    // Whichever of q and v is not supplied is derived through A, so a
    // config may pin either one; supplying both is validated for
    // consistency downstream.
    if (has_velocity) p.darcy_velocity = obj.at("darcy_velocity").get<double>();
    if (!has_velocity && p.cross_section > 0.0)
        p.darcy_velocity = p.injection_rate / p.cross_section;
    if (!has_rate && has_velocity && p.cross_section > 0.0)
        p.injection_rate = p.darcy_velocity * p.cross_section;
}

void parse_mw(const json& obj, MWConfig& mw) {
    reject_unknown_keys(
        obj, {"order", "precision", "postfilter_cadence", "theta", "enabled"},
        "numerics.mw");
    read_into(obj, "order", mw.order);
    read_into(obj, "precision", mw.precision);
    read_into(obj, "postfilter_cadence", mw.postfilter_cadence);
    read_into(obj, "theta", mw.theta);
    read_into(obj, "enabled", mw.enabled);
}

void parse_numerics(const json& obj, NumericsConfig& num, bool& probe_given) {
    reject_unknown_keys(obj,
                        {"cells", "cfl", "flux", "pvi_end", "snapshot_pvis",
                         "probe_x", "front_threshold", "mw"},
                        "numerics");
    read_into(obj, "cells", num.cells);
    read_into(obj, "cfl", num.cfl);
    if (obj.contains("flux"))
        num.flux = flux_kind_from_string(obj.at("flux").get<std::string>());
    read_into(obj, "pvi_end", num.pvi_end);
    read_into(obj, "snapshot_pvis", num.snapshot_pvis);
    if (obj.contains("probe_x")) {
        num.probe_x = obj.at("probe_x").get<double>();
        probe_given = true;
    }
    read_into(obj, "front_threshold", num.front_threshold);
    if (obj.contains("mw")) parse_mw(obj.at("mw"), num.mw);
}

RunConfig parse_json(const json& doc) {
    if (!doc.is_object())
        throw std::invalid_argument("config: document root must be an object");
    reject_unknown_keys(doc, {"fluid_rock", "numerics", "output_dir"},
                        "config root");

    RunConfig cfg;
    bool probe_given = false;
    if (doc.contains("fluid_rock")) parse_fluid_rock(doc.at("fluid_rock"), cfg.fluid_rock);
    if (doc.contains("numerics")) parse_numerics(doc.at("numerics"), cfg.numerics, probe_given);
    if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();

    if (!probe_given) cfg.numerics.probe_x = 0.5 * cfg.fluid_rock.core_length;

    validate(cfg);
    return cfg;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("config: " + what);
}

}  // namespace

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config: " + path + ": " + e.what());
    }
    return parse_json(doc);
}

RunConfig parse_config_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
    return parse_json(doc);
}

std::string config_to_json_string(const RunConfig& cfg, int indent) {
    const FluidRockParams& p = cfg.fluid_rock;
    const NumericsConfig& n = cfg.numerics;
    ordered_json doc;
    doc["fluid_rock"] = {
        {"core_length", p.core_length},
        {"core_diameter", p.core_diameter},
        {"cross_section", p.cross_section},
        {"porosity", p.porosity},
        {"connate_water", p.connate_water},
        {"residual_oil", p.residual_oil},
        {"initial_saturation", p.initial_saturation},
        {"injected_saturation", p.injected_saturation},
        {"water_viscosity", p.water_viscosity},
        {"oil_viscosity", p.oil_viscosity},
        {"corey_nw", p.corey_nw},
        {"corey_no", p.corey_no},
        {"endpoint_krw", p.endpoint_krw},
        {"endpoint_kro", p.endpoint_kro},
        {"injection_rate", p.injection_rate / ml_per_min_to_m3_per_day},
        {"darcy_velocity", p.darcy_velocity},
    };
    doc["numerics"] = {
        {"cells", n.cells},
        {"cfl", n.cfl},
        {"flux", to_string(n.flux)},
        {"pvi_end", n.pvi_end},
        {"snapshot_pvis", n.snapshot_pvis},
        {"probe_x", n.probe_x},
        {"front_threshold", n.front_threshold},
        {"mw",
         {{"order", n.mw.order},
          {"precision", n.mw.precision},
          {"postfilter_cadence", n.mw.postfilter_cadence},
          {"theta", n.mw.theta},
          {"enabled", n.mw.enabled}}},
    };
    doc["output_dir"] = cfg.output_dir;
    return doc.dump(indent);
}

void validate(const RunConfig& cfg) {
    validate(cfg.fluid_rock);
    const NumericsConfig& n = cfg.numerics;
    require(is_power_of_two(n.cells), "cells must be a power of two");
    require(n.cfl > 0.0 && n.cfl <= 1.0, "cfl must lie in (0,1]");
    require(n.pvi_end >= 0.0, "pvi_end must be nonnegative");
    for (std::size_t i = 0; i < n.snapshot_pvis.size(); ++i) {
        require(n.snapshot_pvis[i] >= 0.0, "snapshot_pvis entries must be nonnegative");
        require(n.snapshot_pvis[i] <= n.pvi_end, "snapshot_pvis must not exceed pvi_end");
        if (i > 0)
            require(n.snapshot_pvis[i] > n.snapshot_pvis[i - 1],
                    "snapshot_pvis must be strictly increasing");
    }
    require(n.probe_x > 0.0 && n.probe_x <= cfg.fluid_rock.core_length,
            "probe_x must lie in (0, core_length]");
    require(std::isfinite(n.front_threshold), "front_threshold must be finite");
    require(n.mw.order >= 1, "mw.order must be >= 1");
    require(n.mw.precision >= 0.0, "mw.precision must be nonnegative");
    require(n.mw.postfilter_cadence >= 0, "mw.postfilter_cadence must be nonnegative");
    require(n.mw.theta >= 0.0 && n.mw.theta <= 1.0, "mw.theta must lie in [0,1]");
    require(!cfg.output_dir.empty(), "output_dir must not be empty");
}

}  // namespace bl
