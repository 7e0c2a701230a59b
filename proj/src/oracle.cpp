#include "srp/oracle.hpp"

#include <cmath>
#include <limits>

#include "srp/errors.hpp"

namespace srp::oracle {

namespace {

using cplx = std::complex<double>;

struct M2 {
    cplx a, b, c, d;  // row-major
};

M2 mul(const M2& x, const M2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

M2 axpy(const M2& x, cplx s, const M2& y) {
    return {x.a + s * y.a, x.b + s * y.b, x.c + s * y.c, x.d + s * y.d};
}

M2 propagation_at(const ModelParams& p, const MediumSpec& med, double z) {
    double v = 0.0;
    if (med.impurity) {
        const double z0 = med.impurity->z0;
        v = (z == z0) ? std::numeric_limits<double>::infinity()
                      : vdw_potential(med.impurity->interaction, z, z0);
    }
    const SusceptibilityPair chi = susceptibilities(p, v);
    return {chi.chi_pp, chi.chi_pm, -chi.chi_pm, -chi.chi_pp};
}

// fundamental matrix of i dE/dz = M(z) E over [0, L], N RK4 steps
M2 fundamental(const ModelParams& p, const MediumSpec& med, int n_steps) {
    const double h = med.length / n_steps;
    const cplx mi{0.0, -1.0};
    M2 u{1.0, 0.0, 0.0, 1.0};
    auto f = [&](double z, const M2& y) {
        const M2 m = propagation_at(p, med, z);
        const M2 my = mul(m, y);
        return M2{mi * my.a, mi * my.b, mi * my.c, mi * my.d};
    };
    double z = 0.0;
    for (int i = 0; i < n_steps; ++i) {
        const M2 k1 = f(z, u);
        const M2 k2 = f(z + 0.5 * h, axpy(u, 0.5 * h, k1));
        const M2 k3 = f(z + 0.5 * h, axpy(u, 0.5 * h, k2));
        const M2 k4 = f(z + h, axpy(u, h, k3));
        u = axpy(u, h / 6.0,
                 axpy(k1, 1.0, axpy(k4, 2.0, axpy(k2, 1.0, k3))));
        z += h;
    }
    return u;
}

ScatterResult solve_boundaries(const M2& u) {
    Mat2 m{u.a, u.b, u.c, u.d};
    return scatter_from_transfer(m);
}

}  // namespace

ScatterResult shoot_scatter(const ModelParams& p, const MediumSpec& med,
                            const ShootingConfig& cfg) {
    validate(p);
    validate(med);
    int n = cfg.step_count;
    ScatterResult prev = solve_boundaries(fundamental(p, med, n));
    for (int d = 0; d < cfg.max_doublings; ++d) {
        n *= 2;
        ScatterResult cur = solve_boundaries(fundamental(p, med, n));
        const double est = std::max(std::abs(cur.T - prev.T),
                                    std::abs(cur.R - prev.R));
        if (est <= cfg.tolerance) {
            cur.converged = true;
            return cur;
        }
        prev = cur;
    }
    throw StepCountInsufficient(
        "discretization error estimate above tolerance at doubling cap");
}

QuadraticFit fit_quadratic_dispersion(const DispersionBranch& branch,
                                      double window) {
    const double labs = branch.params.l_abs();
    const double gb = branch.params.gamma_bar();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < branch.k.size(); ++i) {
        const double kappa = branch.k[i] * labs;
        if (std::abs(kappa) > window) continue;
        const double x = kappa * kappa;
        const double y = branch.omega[i].imag() / gb;
        pts.emplace_back(x, y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const int n = static_cast<int>(pts.size());
    if (n < 10)
        throw InsufficientSamples("quadratic fit needs >= 10 samples in window");
    const double det = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (const auto& [x, y] : pts) {
        const double r = y - slope * x - intercept;
        ss += r * r;
    }
    return {slope, intercept, std::sqrt(ss), n};
}

double eigen_residual(const EffectiveHamiltonian& h, const Vector6c& v,
                      std::complex<double> omega) {
    double rr = 0.0, hh = 0.0;
    for (int i = 0; i < 6; ++i) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < 6; ++j) {
            acc += h.matrix(i, j) * v[j];
            hh += std::norm(h.matrix(i, j));
        }
        acc -= omega * v[i];
        rr += std::norm(acc);
    }
    return std::sqrt(rr) / std::sqrt(hh);
}

}  // namespace srp::oracle
