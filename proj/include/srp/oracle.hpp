#pragma once

#include "srp/scattering.hpp"
#include "srp/spectrum.hpp"

namespace srp::oracle {

/// Fixed-step classical RK4 with Richardson step-doubling error control.
/// Deterministic by construction; step_count >= 1000 for acceptance runs.
struct ShootingConfig {
    int step_count = 4000;
    double tolerance = 1e-8;  // Richardson target on T and R
    int max_doublings = 8;
};

/// Independent verifier of the transfer-matrix engine: integrates the
/// fundamental matrix of i dE/dz = M(z) E from z = 0 as an initial-value
/// problem (columns (1,0) and (0,1)), then applies the boundary conditions
/// E+(0) = E0, E-(L) = 0 by linear solve. Throws StepCountInsufficient when
/// the Richardson estimate stays above cfg.tolerance at the doubling cap.
ScatterResult shoot_scatter(const ModelParams& p, const MediumSpec& med,
                            const ShootingConfig& cfg = {});

struct QuadraticFit {
    double coefficient;  // slope of Im omega / gammabar vs kappa^2
    double intercept;
    double residual_norm;
    int samples;
};

/// Ordinary least squares of Im omega/gammabar against kappa^2 = (k l_abs)^2
/// over |kappa| <= window, with intercept (the delta = 0 branch has a finite
/// Im omega at k = 0). Requires >= 10 samples inside the window.
QuadraticFit fit_quadratic_dispersion(const DispersionBranch& branch,
                                      double window);

/// ||H v - omega v||_2 / ||H||_F by direct summation, independent of the
/// eigensolver path.
double eigen_residual(const EffectiveHamiltonian& h, const Vector6c& v,
                      std::complex<double> omega);

}  // namespace srp::oracle
