#include "srp/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "srp/errors.hpp"

namespace srp {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

void fix_gauge(Vector6c& v) {
    v.normalize();
    for (int i = 0; i < 6; ++i) {
        const double m = std::abs(v[i]);
        if (m > 1e-12) {
            v *= std::conj(v[i]) / m;
            break;
        }
    }
}

double overlap_sq(const Vector6c& a, const Vector6c& b) {
    const cplx ip = a.adjoint() * b;
    return std::norm(ip);
}

Vector6c unit_reference(double oc, double g, double s_amp) {
    Vector6c r;
    r << oc, oc, -g, s_amp, 0.0, 0.0;
    const double n = r.norm();
    if (n == 0.0) return Vector6c::Zero();
    return r / n;
}

// most stationary eigenstate: minimal |Im omega|, dark-overlap tiebreak
const PolaritonState& least_lossy(const std::vector<PolaritonState>& states,
                                  double gamma) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < states.size(); ++i) {
        const double di = std::abs(states[i].eigenvalue.imag());
        const double db = std::abs(states[best].eigenvalue.imag());
        if (di < db - 1e-9 * gamma) {
            best = i;
        } else if (di < db + 1e-9 * gamma &&
                   states[i].dark_overlap > states[best].dark_overlap) {
            best = i;
        }
    }
    return states[best];
}

}  // namespace

EffectiveHamiltonian build_heff(const ModelParams& p, double k,
                                double v_shift) {
    EffectiveHamiltonian h;
    h.k = k;
    h.v_shift = v_shift;
    Matrix6c& m = h.matrix;
    m.setZero();
    const double ck = p.light_speed * k;
    m(0, 0) = ck;
    m(0, 4) = p.big_g;
    m(1, 1) = -ck;
    m(1, 5) = p.big_g;
    m(2, 2) = p.delta;
    m(2, 3) = -p.omega_s;
    m(2, 4) = p.omega_c;
    m(2, 5) = p.omega_c;
    m(3, 2) = -p.omega_s;
    m(3, 3) = p.delta + p.delta_s - v_shift;
    m(4, 0) = p.big_g;
    m(4, 2) = p.omega_c;
    m(4, 4) = -kI * p.gamma_bar();
    m(5, 1) = p.big_g;
    m(5, 2) = p.omega_c;
    m(5, 5) = -kI * p.gamma_bar();
    return h;
}

std::vector<PolaritonState> eigensystem(const EffectiveHamiltonian& h) {
    Eigen::ComplexEigenSolver<Matrix6c> solver(h.matrix, true);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("eigen solver did not converge");

    const double norm_f = h.matrix.norm();
    // reference direction recovered from the coupling entries (G, Omega_c)
    const Vector6c ref =
        unit_reference(h.matrix(4, 2).real(), h.matrix(4, 0).real(),
                       -h.matrix(4, 0).real());

    std::vector<PolaritonState> out(6);
    for (int i = 0; i < 6; ++i) {
        PolaritonState s;
        s.eigenvalue = solver.eigenvalues()[i];
        s.amplitudes = solver.eigenvectors().col(i);
        fix_gauge(s.amplitudes);
        const double resid =
            (h.matrix * s.amplitudes - s.eigenvalue * s.amplitudes).norm();
        if (!(resid <= 1e-10 * norm_f) || !std::isfinite(resid))
            throw ConvergenceFailure("eigenpair residual above contract");
        s.dark_overlap = overlap_sq(ref, s.amplitudes);
        out[i] = std::move(s);
    }
    std::sort(out.begin(), out.end(),
              [](const PolaritonState& a, const PolaritonState& b) {
                  const double ia = std::abs(a.eigenvalue.imag());
                  const double ib = std::abs(b.eigenvalue.imag());
                  if (ia != ib) return ia < ib;
                  return a.eigenvalue.real() < b.eigenvalue.real();
              });
    return out;
}

Vector6c slp_reference_vector(const ModelParams& p) {
    return unit_reference(p.omega_c, p.big_g, -p.big_g);
}

Vector6c dressed_reference_vector(const ModelParams& p) {
    return unit_reference(p.omega_c, p.big_g,
                          -p.big_g * p.omega_s / p.delta_s);
}

PolaritonState dark_state(const ModelParams& p, double k) {
    validate(p);
    const double tol =
        1e-12 * std::max({p.gamma, std::abs(p.delta), p.omega_s});
    if (std::abs(p.delta - p.omega_s) > tol &&
        std::abs(p.delta + p.omega_s) > tol)
        throw PreconditionViolated("dark_state needs delta = +-omega_s");
    if (std::abs(p.delta_s) > tol)
        throw PreconditionViolated("dark_state needs delta_s = 0");
    const auto states = eigensystem(build_heff(p, k, 0.0));
    return least_lossy(states, p.gamma);
}

DispersionBranch dispersion_scan(const ModelParams& p,
                                 const std::vector<double>& k_grid) {
    validate(p);
    if (k_grid.size() < 2)
        throw PreconditionViolated("dispersion_scan needs >= 2 grid points");
    for (std::size_t i = 1; i < k_grid.size(); ++i)
        if (!(k_grid[i] > k_grid[i - 1]))
            throw PreconditionViolated("k_grid must be strictly ascending");

    const std::size_t n = k_grid.size();
    std::vector<std::vector<PolaritonState>> all(n);
    for (std::size_t i = 0; i < n; ++i)
        all[i] = eigensystem(build_heff(p, k_grid[i], 0.0));

    std::size_t seed = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(k_grid[i]) < std::abs(k_grid[seed])) seed = i;

    // seed by maximal dark overlap
    std::vector<std::size_t> pick(n);
    {
        const auto& cands = all[seed];
        std::size_t best = 0, second = 1;
        if (cands[second].dark_overlap > cands[best].dark_overlap)
            std::swap(best, second);
        for (std::size_t j = 2; j < cands.size(); ++j) {
            if (cands[j].dark_overlap > cands[best].dark_overlap) {
                second = best;
                best = j;
            } else if (cands[j].dark_overlap > cands[second].dark_overlap) {
                second = j;
            }
        }
        if (cands[best].dark_overlap - cands[second].dark_overlap < 1e-3)
            throw BranchAmbiguity("seed dark overlaps within 1e-3");
        pick[seed] = best;
    }

    auto continue_from = [&](std::size_t from, std::size_t to) {
        const Vector6c& prev = all[from][pick[from]].amplitudes;
        const auto& cands = all[to];
        double best_ov = -1.0, second_ov = -1.0;
        std::size_t best = 0;
        for (std::size_t j = 0; j < cands.size(); ++j) {
            const double ov = std::sqrt(overlap_sq(prev, cands[j].amplitudes));
            if (ov > best_ov) {
                second_ov = best_ov;
                best_ov = ov;
                best = j;
            } else if (ov > second_ov) {
                second_ov = ov;
            }
        }
        if (best_ov - second_ov < 1e-3)
            throw BranchAmbiguity("eigenvector continuation ambiguous");
        if (best_ov < 0.9)
            throw BranchAmbiguity("branch continuity lost (overlap < 0.9)");
        pick[to] = best;
    };
    for (std::size_t i = seed + 1; i < n; ++i) continue_from(i - 1, i);
    for (std::size_t i = seed; i-- > 0;) continue_from(i + 1, i);

    DispersionBranch b;
    b.params = p;
    b.k = k_grid;
    b.omega.reserve(n);
    b.states.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        b.omega.push_back(all[i][pick[i]].eigenvalue);
        b.states.push_back(all[i][pick[i]]);
    }
    return b;
}

std::complex<double> analytic_dispersion(const ModelParams& p, double k) {
    const double c2 = p.light_speed * p.light_speed;
    const double oc2 = p.omega_c * p.omega_c;
    const double g2 = p.big_g * p.big_g;
    return -kI * c2 * p.gamma_bar() * oc2 * k * k / (g2 * (g2 + oc2));
}

std::vector<PopulationSample> population_scan(
    const ModelParams& p, const std::vector<double>& ratio_grid) {
    validate(p);
    if (!(p.omega_s > 0.0))
        throw PreconditionViolated("population scan needs omega_s > 0");
    std::vector<PopulationSample> out;
    out.reserve(ratio_grid.size());
    for (double ratio : ratio_grid) {
        ModelParams q = p;
        q.delta = ratio * p.omega_s;
        const auto states = eigensystem(build_heff(q, 0.0, 0.0));
        out.push_back({ratio, least_lossy(states, p.gamma)});
    }
    return out;
}

std::vector<std::pair<double, double>> intermediate_population(
    const ModelParams& p, const std::vector<double>& ratio_grid) {
    std::vector<std::pair<double, double>> out;
    for (const auto& s : population_scan(p, ratio_grid)) {
        const double pop = std::norm(s.state.amplitudes[4]) +
                           std::norm(s.state.amplitudes[5]);
        out.emplace_back(s.ratio, pop);
    }
    return out;
}

DressedDarkState dressed_dark_state(const ModelParams& p) {
    validate(p);
    const double tol = 1e-12 * std::max(p.gamma, p.omega_s);
    if (!(p.omega_s > 0.0))
        throw PreconditionViolated("dressed_dark_state needs omega_s > 0");
    if (std::abs(p.delta) > tol)
        throw PreconditionViolated("dressed_dark_state needs delta = 0");
    if (std::abs(p.delta_s) < 10.0 * p.omega_s)
        throw PreconditionViolated(
            "dressed_dark_state needs |delta_s| >= 10 omega_s");
    const Vector6c ref = dressed_reference_vector(p);
    const auto states = eigensystem(build_heff(p, 0.0, 0.0));
    std::size_t best = 0;
    double best_ov = -1.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const double ov = overlap_sq(ref, states[i].amplitudes);
        if (ov > best_ov) {
            best_ov = ov;
            best = i;
        }
    }
    return {states[best], 1.0 - best_ov};
}

}  // namespace srp
