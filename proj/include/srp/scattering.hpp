#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "srp/kernels.hpp"
#include "srp/params.hpp"

namespace srp {

using kernels::Mat2;
using cplx = std::complex<double>;

/// van der Waals level-shift model of the impurity, V(z) = C6/(z-z0)^6.
/// Either an explicit C6 or a principal quantum number n with a reference
/// point (n_ref, c6_ref) and the C6(n) = c6_ref*(n/n_ref)^11 scaling law.
struct InteractionModel {
    enum class Kind { explicit_c6, quantum_number };
    Kind kind = Kind::explicit_c6;
    double c6 = 0.0;      // > 0; angular frequency * length^6
    int n = 0;            // >= 10 for the quantum_number variant
    int n_ref = 0;
    double c6_ref = 0.0;  // > 0
    double sign = 1.0;    // +1 repulsive shift (default), -1 attractive

    double effective_c6() const;  // signed C6 after the n-scaling
};

struct Impurity {
    double z0 = 0.0;  // in [0, length]
    InteractionModel interaction;
};

/// Slicing policy of the piecewise-constant transfer composition. The medium
/// is cut into `base_slices << level` uniform slices; the slice containing z0
/// is subdivided geometrically (ratio 2) down to floor_width_frac * L, and
/// the innermost slice uses the V -> infinity susceptibility limit. Levels
/// increase until T and R move by less than convergence_tol under doubling.
struct GridPolicy {
    int base_slices = 64;
    int max_refinements = 12;
    double convergence_tol = 1e-8;
    double floor_width_frac = 1e-6;
    bool strict = false;  // throw GridNotConverged instead of flagging
};

struct MediumSpec {
    double length = 0.0;
    std::optional<Impurity> impurity;
    GridPolicy grid;
};

/// Returns the medium or throws ValidationError listing every violation.
MediumSpec validate(const MediumSpec& raw);

/// Rescales lengths by 1/l_abs and C6 values by 1/(gamma*l_abs^6), matching
/// to_dimensionless(params).
MediumSpec to_dimensionless(const MediumSpec& m, const ModelParams& original);

struct SusceptibilityPair {
    cplx chi_pp;
    cplx chi_pm;
};

/// C6/(z-z0)^6; returns +-inf at z = z0 (downstream code uses the limit
/// susceptibilities there).
double vdw_potential(const InteractionModel& m, double z, double z0);

/// Effective potentials for the right- and left-propagating probe modes:
///   chi_pp = (-i G^2/(c gb)) [(V-dr)(gb d - i Oc^2) + gb Os^2]
///                          / [(V-dr)(gb d - 2i Oc^2) + gb Os^2]
///   chi_pm = ( G^2/(c gb)) (V-dr) Oc^2 / [same denominator]
/// with dr = delta + delta_s, gb = gamma/2. v may be +-infinity (algebraic
/// limit). Throws SingularDenominator when the parameter set sits exactly on
/// a pole (|den| < 1e-14 gamma^2). omega_c = 0 reduces to the two-level
/// response (-i G^2/(c gb), 0) for any v.
SusceptibilityPair susceptibilities(const ModelParams& p, double v);

/// M = [[chi_pp, chi_pm], [-chi_pm, -chi_pp]]; trace(M) = 0 always.
Mat2 propagation_matrix(const ModelParams& p, double v);

/// exp(-i*M*dz) for trace-free M, stable through the degenerate lambda -> 0
/// case (series, exact when M^2 = 0). det = 1 up to roundoff.
Mat2 slab_transfer(const Mat2& m, double dz);

struct TransferResult {
    Mat2 u;
    bool converged = false;
    int refinement_level = 0;
    std::size_t slice_count = 0;
};

/// Ordered product of slab transfers from z = 0 to z = L under the grid
/// refinement policy; u maps E(0) to E(L).
TransferResult transfer_through_medium(const ModelParams& p,
                                       const MediumSpec& med);

struct ProfileSample {
    double z;
    cplx e_plus;
    cplx e_minus;
};

struct ScatterResult {
    cplx t_amp{0.0, 0.0};  // E+(L)/E0
    cplx r_amp{0.0, 0.0};  // E-(0)/E0
    double T = 0.0;        // |t_amp|
    double R = 0.0;        // |r_amp|
    double A = 0.0;        // 1 - T - R
    bool converged = true;
    std::vector<ProfileSample> profile;  // filled on request
};

/// Applies the boundary conditions E+(0) = E0, E-(L) = 0 to a total transfer
/// matrix: E-(0) = -u21/u22 E0, E+(L) = (u11 - u12 u21/u22) E0. Throws
/// IllConditionedBVP when |u22| < 1e-10 ||u||_F.
ScatterResult scatter_from_transfer(const Mat2& u);

/// Full steady-state solve: transfer composition + boundary conditions +
/// T/R/A. Optionally samples the field profile E+-(z) on the converged grid.
ScatterResult scatter(const ModelParams& p, const MediumSpec& med,
                      bool want_profile = false);

struct ScanRow {
    double x;
    ScatterResult result;
};

struct QuantumNumberScan {
    std::vector<ScanRow> rows;
    bool absorption_non_decreasing = false;
};

/// T/R/A versus principal quantum number; requires the quantum_number
/// interaction variant.
QuantumNumberScan scan_quantum_number(const ModelParams& p,
                                      const MediumSpec& med,
                                      const std::vector<int>& n_grid);

/// T/R/A versus Omega_c/Omega_s at fixed n. Omega_s is taken from p and
/// delta is re-pinned to Omega_s at every grid point.
std::vector<ScanRow> scan_ratio(const ModelParams& p, const MediumSpec& med,
                                const std::vector<double>& ratio_grid, int n);

}  // namespace srp
