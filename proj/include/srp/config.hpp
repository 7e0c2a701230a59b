#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "srp/params.hpp"
#include "srp/scattering.hpp"

namespace srp::config {

/// Fully resolved inputs in canonical units (gamma = 1, l_abs = 1), plus the
/// resolved record echoed into artifact provenance headers.
struct Resolved {
    ModelParams params;
    std::optional<MediumSpec> medium;
    nlohmann::ordered_json provenance;
};

/// Built-in configurations:
///   fig2 - canonical units, omega_s = omega_c = G = gamma, delta = omega_s
///   rb87 - SI (rad/s, um) 87Rb numbers: 40 um slab, OD 3, impurity at L/2
///          with the n-variant interaction (n = n_ref = 60)
///   fig3 - alias of rb87 (same physics, canonicalized at resolution)
nlohmann::json preset_config(const std::string& name);

/// "a.b.c=value" -> sets /a/b/c in root; the value is parsed as JSON when
/// possible, else taken as a string.
void apply_set(nlohmann::json& root, const std::string& kv);

/// Validates the schema, applies unit conventions and canonicalizes.
/// Params schema: {"gamma","omega_c","omega_s","delta","delta_s","big_g",
/// "units":"gamma"|"si"}. SI frequencies are angular (rad/s), SI lengths um;
/// gamma-units records must have gamma = 1 and lengths in l_abs.
/// Medium schema: {"length","z0","interaction":{"type":"c6"|"n",...},
/// "grid":{"base_slices","max_refinements",...}}; z0 defaults to length/2.
Resolved resolve(const nlohmann::json& root);

}  // namespace srp::config
