#include "srp/config.hpp"

#include <cmath>
#include <set>

namespace srp::config {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kLightSpeedUmPerS = 2.99792458e14;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
}

double need(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError(std::string("missing numeric \"") + key + "\" in " +
                          where);
    return j.at(key).get<double>();
}

ModelParams parse_params(const json& j, std::string& units_out) {
    check_keys(j,
               {"gamma", "omega_c", "omega_s", "delta", "delta_s", "big_g",
                "units"},
               "params");
    if (!j.contains("units") || !j.at("units").is_string())
        throw ConfigError("params.units must be \"gamma\" or \"si\"");
    const std::string units = j.at("units").get<std::string>();
    units_out = units;
    ModelParams p;
    if (units == "gamma") {
        p.gamma = j.value("gamma", 1.0);
        if (p.gamma != 1.0)
            throw ConfigError("gamma must be 1 in gamma units");
    } else if (units == "si") {
        p.gamma = need(j, "gamma", "params");
    } else {
        throw ConfigError("params.units must be \"gamma\" or \"si\"");
    }
    p.omega_c = need(j, "omega_c", "params");
    p.omega_s = need(j, "omega_s", "params");
    p.delta = need(j, "delta", "params");
    p.delta_s = need(j, "delta_s", "params");
    p.big_g = need(j, "big_g", "params");
    // c is never user-facing: physical constant in SI, l_abs closure in
    // gamma units
    p.light_speed = (units == "si") ? kLightSpeedUmPerS
                                    : p.big_g * p.big_g / p.gamma_bar();
    return validate(p);
}

MediumSpec parse_medium(const json& j) {
    check_keys(j, {"length", "z0", "interaction", "grid"}, "medium");
    MediumSpec m;
    m.length = need(j, "length", "medium");
    if (j.contains("interaction")) {
        const json& ij = j.at("interaction");
        check_keys(ij, {"type", "c6", "sign", "n", "n_ref", "c6_ref"},
                   "medium.interaction");
        Impurity imp;
        imp.z0 = j.value("z0", m.length / 2.0);
        const std::string type = ij.value("type", "c6");
        if (type == "c6") {
            imp.interaction.kind = InteractionModel::Kind::explicit_c6;
            imp.interaction.c6 = need(ij, "c6", "medium.interaction");
        } else if (type == "n") {
            imp.interaction.kind = InteractionModel::Kind::quantum_number;
            imp.interaction.n =
                static_cast<int>(need(ij, "n", "medium.interaction"));
            imp.interaction.n_ref =
                static_cast<int>(need(ij, "n_ref", "medium.interaction"));
            imp.interaction.c6_ref = need(ij, "c6_ref", "medium.interaction");
        } else {
            throw ConfigError("interaction.type must be \"c6\" or \"n\"");
        }
        imp.interaction.sign = ij.value("sign", 1.0);
        m.impurity = imp;
    } else if (j.contains("z0")) {
        throw ConfigError("medium.z0 given without medium.interaction");
    }
    if (j.contains("grid")) {
        const json& gj = j.at("grid");
        check_keys(gj,
                   {"base_slices", "max_refinements", "convergence_tol",
                    "floor_width_frac"},
                   "medium.grid");
        m.grid.base_slices = gj.value("base_slices", m.grid.base_slices);
        m.grid.max_refinements =
            gj.value("max_refinements", m.grid.max_refinements);
        m.grid.convergence_tol =
            gj.value("convergence_tol", m.grid.convergence_tol);
        m.grid.floor_width_frac =
            gj.value("floor_width_frac", m.grid.floor_width_frac);
    }
    return validate(m);
}

ordered_json params_provenance(const ModelParams& p) {
    ordered_json o;
    o["gamma"] = p.gamma;
    o["omega_c"] = p.omega_c;
    o["omega_s"] = p.omega_s;
    o["delta"] = p.delta;
    o["delta_s"] = p.delta_s;
    o["big_g"] = p.big_g;
    o["light_speed"] = p.light_speed;
    o["units"] = "gamma";
    return o;
}

ordered_json medium_provenance(const MediumSpec& m) {
    ordered_json o;
    o["length"] = m.length;
    if (m.impurity) {
        o["z0"] = m.impurity->z0;
        const auto& i = m.impurity->interaction;
        ordered_json io;
        io["type"] =
            i.kind == InteractionModel::Kind::explicit_c6 ? "c6" : "n";
        if (i.kind == InteractionModel::Kind::explicit_c6) {
            io["c6"] = i.c6;
        } else {
            io["n"] = i.n;
            io["n_ref"] = i.n_ref;
            io["c6_ref"] = i.c6_ref;
        }
        io["sign"] = i.sign;
        o["interaction"] = io;
    }
    o["grid"] = {{"base_slices", m.grid.base_slices},
                 {"max_refinements", m.grid.max_refinements}};
    return o;
}

}  // namespace

json preset_config(const std::string& name) {
    if (name == "fig2") {
        return json{{"params",
                     {{"gamma", 1.0},
                      {"omega_c", 1.0},
                      {"omega_s", 1.0},
                      {"delta", 1.0},
                      {"delta_s", 0.0},
                      {"big_g", 1.0},
                      {"units", "gamma"}}}};
    }
    if (name == "rb87" || name == "fig3") {
        const Rb87Preset preset = rb87_preset();
        const ModelParams p = preset.to_params();
        return json{
            {"params",
             {{"gamma", p.gamma},
              {"omega_c", p.omega_c},
              {"omega_s", p.omega_s},
              {"delta", p.delta},
              {"delta_s", p.delta_s},
              {"big_g", p.big_g},
              {"units", "si"}}},
            {"medium",
             {{"length", preset.slab_length_um},
              {"z0", preset.slab_length_um / 2.0},
              {"interaction",
               {{"type", "n"},
                {"n", preset.n_ref},
                {"n_ref", preset.n_ref},
                {"c6_ref", preset.c6_ref_si}}}}}};
    }
    throw ConfigError("unknown preset \"" + name +
                      "\" (expected fig2, fig3 or rb87)");
}

void apply_set(json& root, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set expects key.path=value, got \"" + kv + "\"");
    std::string path = "/" + kv.substr(0, eq);
    for (auto& c : path)
        if (c == '.') c = '/';
    const std::string raw = kv.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;  // bare string
    }
    try {
        root[json::json_pointer(path)] = value;
    } catch (const json::exception& e) {
        throw ConfigError("cannot set \"" + kv + "\": " + e.what());
    }
}

Resolved resolve(const json& root) {
    check_keys(root, {"params", "medium"}, "config");
    if (!root.contains("params"))
        throw ConfigError("config needs a \"params\" object");
    std::string units;
    const ModelParams p_raw = parse_params(root.at("params"), units);
    Resolved r;
    r.params = to_dimensionless(p_raw);
    if (root.contains("medium")) {
        MediumSpec m_raw = parse_medium(root.at("medium"));
        r.medium = to_dimensionless(m_raw, p_raw);
    }
    r.provenance["params"] = params_provenance(r.params);
    if (r.medium) r.provenance["medium"] = medium_provenance(*r.medium);
    return r;
}

}  // namespace srp::config
