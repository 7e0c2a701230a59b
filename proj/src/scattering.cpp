#include "srp/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srp/errors.hpp"
#include "kernels/srp_kernel_series.hpp"

namespace srp {

namespace {

constexpr cplx kI{0.0, 1.0};

kernels::ChiConsts chi_consts(const ModelParams& p) {
    const double gb = p.gamma_bar();
    const double k1 = p.big_g * p.big_g / (p.light_speed * gb);
    kernels::ChiConsts c{};
    c.a_re = gb * p.delta;
    c.a_im = -p.omega_c * p.omega_c;
    c.c_re = gb * p.delta;
    c.c_im = -2.0 * p.omega_c * p.omega_c;
    c.b = gb * p.omega_s * p.omega_s;
    c.k1 = k1;
    c.k3 = k1 * p.omega_c * p.omega_c;
    c.delta_r = p.delta_r();
    return c;
}

struct SliceGrid {
    std::vector<double> edges;        // ascending, edges.front()=0, back()=L
    std::ptrdiff_t center = -1;       // slice index holding z0, or -1
};

SliceGrid build_grid(const MediumSpec& med, int level) {
    const double L = med.length;
    const std::size_t n =
        static_cast<std::size_t>(med.grid.base_slices) << level;
    SliceGrid g;
    g.edges.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        g.edges[i] = L * static_cast<double>(i) / static_cast<double>(n);
    if (!med.impurity) return g;

    const double z0 = med.impurity->z0;
    const double floor_w = med.grid.floor_width_frac * L;
    std::size_t k = std::min<std::size_t>(
        n - 1, static_cast<std::size_t>(std::floor(z0 / L * n)));
    const double a = g.edges[k];
    const double b = g.edges[k + 1];

    // split [a,b] geometrically toward z0 from both sides
    std::vector<double> sub;
    double x = a;
    while (z0 - x > floor_w) {
        x += (z0 - x) * 0.5;
        sub.push_back(x);
    }
    std::vector<double> right;
    x = b;
    while (x - z0 > floor_w) {
        x -= (x - z0) * 0.5;
        right.push_back(x);
    }
    sub.insert(sub.end(), right.rbegin(), right.rend());

    std::vector<double> edges;
    edges.reserve(g.edges.size() + sub.size());
    edges.insert(edges.end(), g.edges.begin(), g.edges.begin() + k + 1);
    edges.insert(edges.end(), sub.begin(), sub.end());
    edges.insert(edges.end(), g.edges.begin() + k + 1, g.edges.end());
    g.edges = std::move(edges);

    // innermost slice containing z0
    for (std::size_t i = 0; i + 1 < g.edges.size(); ++i) {
        if (g.edges[i] <= z0 && z0 <= g.edges[i + 1]) {
            g.center = static_cast<std::ptrdiff_t>(i);
            // prefer the narrower of two touching slices
            if (g.edges[i + 1] == z0 && i + 2 < g.edges.size() &&
                g.edges[i + 2] - g.edges[i + 1] < g.edges[i + 1] - g.edges[i])
                g.center = static_cast<std::ptrdiff_t>(i + 1);
            break;
        }
    }
    return g;
}

constexpr std::size_t kBlock = 4096;

Mat2 compose(const ModelParams& p, const MediumSpec& med,
             const SliceGrid& grid) {
    const auto& kt = kernels::active();
    const std::size_t n = grid.edges.size() - 1;
    Mat2 u;

    const bool varying =
        med.impurity.has_value() && p.omega_c > 0.0;
    SusceptibilityPair uniform{};
    if (!varying) uniform = susceptibilities(p, 0.0);
    SusceptibilityPair center_chi{};
    double c6 = 0.0, z0 = 0.0;
    if (med.impurity) {
        c6 = med.impurity->interaction.effective_c6();
        z0 = med.impurity->z0;
        center_chi = susceptibilities(p, std::numeric_limits<double>::infinity());
    }
    const kernels::ChiConsts consts = chi_consts(p);

    std::vector<double> zm(kBlock), dz(kBlock), v(kBlock);
    std::vector<double> ppre(kBlock), ppim(kBlock), pmre(kBlock), pmim(kBlock);

    for (std::size_t base = 0; base < n; base += kBlock) {
        const std::size_t m = std::min(kBlock, n - base);
        for (std::size_t i = 0; i < m; ++i) {
            zm[i] = 0.5 * (grid.edges[base + i] + grid.edges[base + i + 1]);
            dz[i] = grid.edges[base + i + 1] - grid.edges[base + i];
        }
        const std::ptrdiff_t local_center =
            (grid.center >= 0 &&
             static_cast<std::size_t>(grid.center) >= base &&
             static_cast<std::size_t>(grid.center) < base + m)
                ? grid.center - static_cast<std::ptrdiff_t>(base)
                : -1;
        if (varying) {
            kt.vdw_shift(zm.data(), m, c6, z0, v.data());
            if (local_center >= 0) v[local_center] = 0.0;  // placeholder
            kt.susceptibility(consts, v.data(), m, ppre.data(), ppim.data(),
                              pmre.data(), pmim.data());
        } else {
            std::fill_n(ppre.begin(), m, uniform.chi_pp.real());
            std::fill_n(ppim.begin(), m, uniform.chi_pp.imag());
            std::fill_n(pmre.begin(), m, uniform.chi_pm.real());
            std::fill_n(pmim.begin(), m, uniform.chi_pm.imag());
        }
        if (local_center >= 0) {
            ppre[local_center] = center_chi.chi_pp.real();
            ppim[local_center] = center_chi.chi_pp.imag();
            pmre[local_center] = center_chi.chi_pm.real();
            pmim[local_center] = center_chi.chi_pm.imag();
        }
        kt.transfer_chain(ppre.data(), ppim.data(), pmre.data(), pmim.data(),
                          dz.data(), m, u);
    }
    if (!std::isfinite(u.m00.real()) || !std::isfinite(u.m00.imag()) ||
        !std::isfinite(u.m11.real()) || !std::isfinite(u.m11.imag()))
        throw SingularDenominator(
            "susceptibility pole inside the medium (non-finite transfer)");
    return u;
}

}  // namespace

double InteractionModel::effective_c6() const {
    if (kind == Kind::explicit_c6) return sign * c6;
    const double ratio = static_cast<double>(n) / static_cast<double>(n_ref);
    return sign * c6_ref * std::pow(ratio, 11);
}

MediumSpec validate(const MediumSpec& raw) {
    std::vector<std::string> bad;
    if (!(raw.length > 0.0) || !std::isfinite(raw.length))
        bad.push_back("NonPositive(length)");
    if (raw.impurity) {
        const auto& imp = *raw.impurity;
        if (!(imp.z0 >= 0.0 && imp.z0 <= raw.length))
            bad.push_back("ImpurityOutsideMedium(z0)");
        const auto& m = imp.interaction;
        if (m.kind == InteractionModel::Kind::explicit_c6) {
            if (!(m.c6 > 0.0)) bad.push_back("NonPositive(c6)");
        } else {
            if (m.n < 10) bad.push_back("QuantumNumberTooSmall(n<10)");
            if (m.n_ref < 10) bad.push_back("QuantumNumberTooSmall(n_ref<10)");
            if (!(m.c6_ref > 0.0)) bad.push_back("NonPositive(c6_ref)");
        }
        if (m.sign != 1.0 && m.sign != -1.0) bad.push_back("BadSign(sign)");
    }
    if (raw.grid.base_slices < 1) bad.push_back("NonPositive(base_slices)");
    if (raw.grid.max_refinements < 0) bad.push_back("Negative(max_refinements)");
    if (!(raw.grid.convergence_tol > 0.0)) bad.push_back("NonPositive(convergence_tol)");
    if (!(raw.grid.floor_width_frac > 0.0)) bad.push_back("NonPositive(floor_width_frac)");
    if (!bad.empty()) throw ValidationError(std::move(bad));
    return raw;
}

MediumSpec to_dimensionless(const MediumSpec& m, const ModelParams& original) {
    const CanonicalScale s = canonical_scale(original);
    const double len6 = std::pow(s.len, 6);
    MediumSpec q = m;
    q.length = m.length / s.len;
    if (q.impurity) {
        q.impurity->z0 = m.impurity->z0 / s.len;
        q.impurity->interaction.c6 = m.impurity->interaction.c6 / (s.freq * len6);
        q.impurity->interaction.c6_ref =
            m.impurity->interaction.c6_ref / (s.freq * len6);
    }
    return q;
}

double vdw_potential(const InteractionModel& m, double z, double z0) {
    const double d = z - z0;
    const double d2 = d * d;
    return m.effective_c6() / (d2 * d2 * d2);
}

SusceptibilityPair susceptibilities(const ModelParams& p, double v) {
    const double gb = p.gamma_bar();
    const double k = p.big_g * p.big_g / (p.light_speed * gb);
    const double oc2 = p.omega_c * p.omega_c;
    if (p.omega_c == 0.0) return {-kI * k, cplx{0.0, 0.0}};  // two-level
    const cplx a{gb * p.delta, -oc2};
    const cplx c{gb * p.delta, -2.0 * oc2};
    if (std::isinf(v)) return {-kI * k * a / c, k * oc2 / c};
    const double w = v - p.delta_r();
    const cplx num = w * a + gb * p.omega_s * p.omega_s;
    const cplx den = w * c + gb * p.omega_s * p.omega_s;
    if (std::abs(den) < 1e-14 * p.gamma * p.gamma)
        throw SingularDenominator("parameters sit on a susceptibility pole");
    return {-kI * k * num / den, k * oc2 * w / den};
}

Mat2 propagation_matrix(const ModelParams& p, double v) {
    const SusceptibilityPair chi = susceptibilities(p, v);
    return {chi.chi_pp, chi.chi_pm, -chi.chi_pm, -chi.chi_pp};
}

Mat2 slab_transfer(const Mat2& m, double dz) {
    // for trace-free M, M^2 = (m00^2 + m01*m10) I =: lambda^2 I
    const cplx lam2 = m.m00 * m.m00 + m.m01 * m.m10;
    const cplx w = lam2 * (dz * dz);
    cplx cosv, sincv;
    if (std::norm(w) <= kernels::detail::kSeriesDomainSq) {
        cosv = kernels::detail::cos_from_square(w);
        sincv = kernels::detail::sinc_from_square(w);
    } else {
        const cplx x = std::sqrt(w);
        cosv = std::cos(x);
        sincv = std::sin(x) / x;
    }
    const cplx s = sincv * dz;
    return {cosv - kI * s * m.m00, -kI * s * m.m01,
            -kI * s * m.m10, cosv - kI * s * m.m11};
}

TransferResult transfer_through_medium(const ModelParams& p,
                                       const MediumSpec& med) {
    double prev_t = 0.0, prev_r = 0.0;
    TransferResult out;
    for (int level = 0; level <= med.grid.max_refinements; ++level) {
        const SliceGrid grid = build_grid(med, level);
        out.u = compose(p, med, grid);
        out.refinement_level = level;
        out.slice_count = grid.edges.size() - 1;
        const ScatterResult sr = scatter_from_transfer(out.u);
        if (level > 0 && std::abs(sr.T - prev_t) < med.grid.convergence_tol &&
            std::abs(sr.R - prev_r) < med.grid.convergence_tol) {
            out.converged = true;
            return out;
        }
        prev_t = sr.T;
        prev_r = sr.R;
    }
    out.converged = false;
    if (med.grid.strict)
        throw GridNotConverged("refinement cap reached before T,R settled");
    return out;
}

ScatterResult scatter_from_transfer(const Mat2& u) {
    const double norm_f =
        std::sqrt(std::norm(u.m00) + std::norm(u.m01) + std::norm(u.m10) +
                  std::norm(u.m11));
    if (std::abs(u.m11) < 1e-10 * norm_f)
        throw IllConditionedBVP("|u22| vanishes; resonant medium");
    ScatterResult r;
    r.r_amp = -u.m10 / u.m11;
    r.t_amp = u.m00 + u.m01 * r.r_amp;
    r.T = std::abs(r.t_amp);
    r.R = std::abs(r.r_amp);
    r.A = 1.0 - r.T - r.R;
    return r;
}

ScatterResult scatter(const ModelParams& p, const MediumSpec& med,
                      bool want_profile) {
    validate(p);
    validate(med);
    const TransferResult tr = transfer_through_medium(p, med);
    ScatterResult res = scatter_from_transfer(tr.u);
    res.converged = tr.converged;
    if (want_profile) {
        const SliceGrid grid = build_grid(med, tr.refinement_level);
        const std::size_t n = grid.edges.size() - 1;
        const std::size_t stride = n > 4000 ? (n + 3999) / 4000 : 1;
        cplx ep{1.0, 0.0};
        cplx em = res.r_amp;
        res.profile.push_back({0.0, ep, em});
        for (std::size_t i = 0; i < n; ++i) {
            const double zm = 0.5 * (grid.edges[i] + grid.edges[i + 1]);
            const double v =
                !med.impurity
                    ? 0.0
                    : (static_cast<std::ptrdiff_t>(i) == grid.center
                           ? std::numeric_limits<double>::infinity()
                           : vdw_potential(med.impurity->interaction, zm,
                                           med.impurity->z0));
            const Mat2 slab = slab_transfer(propagation_matrix(p, v),
                                            grid.edges[i + 1] - grid.edges[i]);
            const cplx np = slab.m00 * ep + slab.m01 * em;
            const cplx nm = slab.m10 * ep + slab.m11 * em;
            ep = np;
            em = nm;
            if ((i + 1) % stride == 0 || i + 1 == n)
                res.profile.push_back({grid.edges[i + 1], ep, em});
        }
    }
    return res;
}

QuantumNumberScan scan_quantum_number(const ModelParams& p,
                                      const MediumSpec& med,
                                      const std::vector<int>& n_grid) {
    if (!med.impurity ||
        med.impurity->interaction.kind != InteractionModel::Kind::quantum_number)
        throw PreconditionViolated(
            "scan_quantum_number needs the quantum_number interaction variant");
    QuantumNumberScan scan;
    scan.absorption_non_decreasing = true;
    double prev_a = -std::numeric_limits<double>::infinity();
    for (int n : n_grid) {
        MediumSpec m = med;
        m.impurity->interaction.n = n;
        validate(m);
        ScanRow row{static_cast<double>(n), scatter(p, m)};
        if (row.result.A < prev_a - 1e-12) scan.absorption_non_decreasing = false;
        prev_a = row.result.A;
        scan.rows.push_back(std::move(row));
    }
    return scan;
}

std::vector<ScanRow> scan_ratio(const ModelParams& p, const MediumSpec& med,
                                const std::vector<double>& ratio_grid, int n) {
    if (!(p.omega_s > 0.0))
        throw PreconditionViolated("scan_ratio needs omega_s > 0");
    MediumSpec m = med;
    if (m.impurity &&
        m.impurity->interaction.kind == InteractionModel::Kind::quantum_number) {
        m.impurity->interaction.n = n;
        validate(m);
    }
    std::vector<ScanRow> rows;
    for (double ratio : ratio_grid) {
        ModelParams q = p;
        q.omega_c = ratio * p.omega_s;
        q.delta = p.omega_s;  // stationary-polariton condition re-pinned
        rows.push_back({ratio, scatter(validate(q), m)});
    }
    return rows;
}

}  // namespace srp
