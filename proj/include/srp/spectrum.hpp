#pragma once

#include <Eigen/Core>

#include <complex>
#include <utility>
#include <vector>

#include "srp/params.hpp"

namespace srp {

using Matrix6c = Eigen::Matrix<std::complex<double>, 6, 6>;
using Vector6c = Eigen::Matrix<std::complex<double>, 6, 1>;

/// Momentum-space coefficient matrix of the coupled probe/coherence
/// amplitudes in the fixed basis order (E+, E-, D, S, P+, P-):
///   row E+-: (+-c k) E+-             + G P+-
///   row P+-: G E+- + Omega_c D       - i gammabar P+-
///   row D:   Omega_c (P+ + P-) - Omega_s S + delta D
///   row S:   -Omega_s D + (delta + delta_s - v) S
/// The D<->S coupling carries the S-basis phase in which the stationary
/// dark state at delta = +Omega_s has the amplitude pattern
/// (Oc, Oc, -G, -G, 0, 0); the impurity level shift v enters with the sign
/// that reproduces the (V - delta_r) susceptibilities under steady-state
/// elimination. With all parameters real,
/// matrix + i*gammabar*(projector onto {P+,P-}) is Hermitian.
struct EffectiveHamiltonian {
    Matrix6c matrix;
    double k = 0.0;
    double v_shift = 0.0;
};

struct PolaritonState {
    Vector6c amplitudes;  // unit norm; first nonzero component real positive
    std::complex<double> eigenvalue{0.0, 0.0};
    double dark_overlap = 0.0;  // squared overlap with the analytic SLP vector
};

/// Ordered samples of one tracked eigenbranch. k strictly increasing;
/// consecutive eigenvector overlaps >= 0.9.
struct DispersionBranch {
    std::vector<double> k;
    std::vector<std::complex<double>> omega;
    std::vector<PolaritonState> states;
    ModelParams params;
};

EffectiveHamiltonian build_heff(const ModelParams& p, double k, double v_shift);

/// All 6 eigenpairs, gauge-fixed and sorted by ascending |Im omega| then
/// Re omega. Every pair satisfies ||H v - omega v||_2 <= 1e-10 ||H||_F;
/// violations raise ConvergenceFailure.
std::vector<PolaritonState> eigensystem(const EffectiveHamiltonian& h);

/// Unit vector along (Oc, Oc, -G, -G, 0, 0).
Vector6c slp_reference_vector(const ModelParams& p);
/// Unit vector along (Oc, Oc, -G, -G*Os/Ds, 0, 0).
Vector6c dressed_reference_vector(const ModelParams& p);

/// The stationary dark state. Requires delta = +-omega_s and delta_s = 0;
/// at k = 0 the eigenvalue modulus is <= 1e-10 gamma and for delta = +omega_s
/// the amplitudes are (Oc, Oc, -G, -G, 0, 0) normalized. For k != 0 returns
/// the least-lossy eigenstate at that momentum.
PolaritonState dark_state(const ModelParams& p, double k);

/// Tracks the polariton branch over k_grid (sorted ascending): seeded at the
/// grid point nearest k = 0 by maximal dark overlap, continued outward by
/// maximal consecutive eigenvector overlap. Throws BranchAmbiguity when two
/// candidates are closer than 1e-3 in overlap or continuity drops below 0.9.
DispersionBranch dispersion_scan(const ModelParams& p,
                                 const std::vector<double>& k_grid);

/// Small-momentum dispersion law -i c^2 gammabar Oc^2 k^2 / (G^2(G^2+Oc^2)).
std::complex<double> analytic_dispersion(const ModelParams& p, double k);

struct PopulationSample {
    double ratio;  // delta / omega_s
    PolaritonState state;
};

/// k = 0 eigenstate scan over delta/omega_s. At each ratio the most
/// stationary eigenstate (minimal |Im omega|, dark-overlap tiebreak) is
/// selected; it carries zero intermediate-state population exactly at
/// ratio = +-1.
std::vector<PopulationSample> population_scan(
    const ModelParams& p, const std::vector<double>& ratio_grid);

/// (ratio, |P+|^2 + |P-|^2) pairs from population_scan.
std::vector<std::pair<double, double>> intermediate_population(
    const ModelParams& p, const std::vector<double>& ratio_grid);

struct DressedDarkState {
    PolaritonState state;
    double overlap_deficit;  // 1 - |<ref|state>|^2, O((Os/Ds)^2)
};

/// Far-detuned (dressing) dark state: requires delta = 0, |delta_s| >=
/// 10 omega_s, omega_s > 0. Returns the k = 0 eigenstate of maximal overlap
/// with (Oc, Oc, -G, -G*Os/Ds, 0, 0) plus the overlap deficit.
DressedDarkState dressed_dark_state(const ModelParams& p);

}  // namespace srp
