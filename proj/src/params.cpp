#include "srp/params.hpp"

#include <cmath>

namespace srp {

namespace {
constexpr double kLightSpeedUmPerS = 2.99792458e14;
}

ModelParams validate(const ModelParams& raw) {
    std::vector<std::string> bad;
    auto positive = [&](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) bad.push_back(std::string("NonPositive(") + name + ")");
    };
    positive(raw.gamma, "gamma");
    positive(raw.light_speed, "light_speed");
    positive(raw.big_g, "big_g");
    if (!(raw.omega_c >= 0.0) || !std::isfinite(raw.omega_c)) bad.push_back("NegativeRabi(omega_c)");
    if (!(raw.omega_s >= 0.0) || !std::isfinite(raw.omega_s)) bad.push_back("NegativeRabi(omega_s)");
    if (!std::isfinite(raw.delta)) bad.push_back("NonFinite(delta)");
    if (!std::isfinite(raw.delta_s)) bad.push_back("NonFinite(delta_s)");
    if (!bad.empty()) throw ValidationError(std::move(bad));
    return raw;
}

CanonicalScale canonical_scale(const ModelParams& p) {
    return {p.gamma, p.l_abs()};
}

ModelParams to_dimensionless(const ModelParams& p) {
    const CanonicalScale s = canonical_scale(p);
    ModelParams q;
    q.gamma = 1.0;
    q.omega_c = p.omega_c / s.freq;
    q.omega_s = p.omega_s / s.freq;
    q.delta = p.delta / s.freq;
    q.delta_s = p.delta_s / s.freq;
    q.big_g = p.big_g / s.freq;
    // c carries (length * frequency); rescaling both leaves l_abs = 1 exactly.
    q.light_speed = p.light_speed / (s.len * s.freq);
    return validate(q);
}

ModelParams Rb87Preset::to_params() const {
    ModelParams p;
    p.gamma = gamma_si;
    p.light_speed = kLightSpeedUmPerS;
    p.omega_c = gamma_si;
    p.omega_s = gamma_si;
    p.delta = p.omega_s;
    p.delta_s = 0.0;
    // OD = L / l_abs = G^2 L / (c * gammabar)
    p.big_g = std::sqrt(optical_depth * p.light_speed * p.gamma_bar() / slab_length_um);
    return validate(p);
}

Rb87Preset rb87_preset() { return {}; }

ModelParams fig2_params() {
    ModelParams p;
    p.gamma = 1.0;
    p.omega_c = 1.0;
    p.omega_s = 1.0;
    p.delta = 1.0;
    p.delta_s = 0.0;
    p.big_g = 1.0;
    p.light_speed = p.big_g * p.big_g / p.gamma_bar();  // l_abs = 1
    return validate(p);
}

}  // namespace srp
