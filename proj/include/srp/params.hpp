#pragma once

#include <string>

#include "srp/errors.hpp"

namespace srp {

/// All coupling, detuning and decay symbols of the dual-V + Rydberg scheme
/// in one record. Frequencies are angular; any self-consistent unit system
/// works. The canonical system (gamma = 1, l_abs = 1) is produced by
/// to_dimensionless(); SI appears only at the preset / CLI boundary.
///
/// Value type: immutable after validation, safe to share across threads.
struct ModelParams {
    double gamma = 1.0;        // intermediate-state decay rate
    double omega_c = 0.0;      // control Rabi frequency
    double omega_s = 0.0;      // Rydberg coupling Rabi frequency
    double delta = 0.0;        // two-photon detuning
    double delta_s = 0.0;      // Rydberg coupling detuning
    double big_g = 1.0;        // collective coupling G = g*sqrt(rho)
    double light_speed = 1.0;  // c, in (length unit) * (frequency unit)

    double gamma_bar() const { return gamma / 2.0; }
    double l_abs() const { return light_speed * gamma_bar() / (big_g * big_g); }
    double delta_r() const { return delta + delta_s; }
};

/// Returns the validated record or throws ValidationError naming every
/// violated constraint: NonPositive(gamma|light_speed|big_g),
/// NegativeRabi(omega_c|omega_s). Detunings may carry any sign.
ModelParams validate(const ModelParams& raw);

/// Rescales so that gamma = 1 and l_abs = 1 (frequencies in units of gamma,
/// lengths in units of l_abs). Idempotent; leaves all dimensionless ratios,
/// and therefore all observables, unchanged.
ModelParams to_dimensionless(const ModelParams& p);

/// Frequency/length scale factors taking a record to canonical units.
/// Divide frequencies by `freq`, lengths by `len`.
struct CanonicalScale {
    double freq;
    double len;
};
CanonicalScale canonical_scale(const ModelParams& p);

/// 87Rb numbers for a quasi-1D realization: D2 intermediate states with
/// gamma = 2*pi*6 MHz, a 40 um slab at optical depth 3 and density 1 um^-3.
/// The C6 reference is a literature value for the 60S_1/2 state and is an
/// external input, not derived here. Frequencies rad/s, lengths um.
struct Rb87Preset {
    double gamma_si = 2.0 * 3.14159265358979323846 * 6.0e6;
    double slab_length_um = 40.0;
    double optical_depth = 3.0;
    double density_per_um3 = 1.0;
    double c6_ref_si = 2.0 * 3.14159265358979323846 * 140.0e9;  // rad/s * um^6
    int n_ref = 60;
    std::string level_assignments =
        "g=|5S1/2,F=1,mF=0>, d=|5S1/2,F=2,mF=0>, e+-=|5P3/2,F=1,mF=+-1>, "
        "r=|nS1/2,J=1/2,mJ=1/2>";

    /// ModelParams in SI units (rad/s, um). big_g is fixed by
    /// slab_length / l_abs = optical_depth; omega_c = omega_s = gamma and
    /// delta = omega_s, delta_s = 0 are overridable defaults.
    ModelParams to_params() const;
};

Rb87Preset rb87_preset();

/// Canonical-unit parameter set with omega_s = omega_c = big_g = gamma and
/// delta = omega_s, delta_s = 0.
ModelParams fig2_params();

}  // namespace srp
