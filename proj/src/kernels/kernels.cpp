#include "srp/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "srp/errors.hpp"
#include "srp_kernel_series.hpp"

namespace srp::kernels {

namespace {

void vdw_shift_scalar(const double* z, std::size_t n, double c6, double z0,
                      double* v) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = z[i] - z0;
        const double d2 = d * d;
        const double d6 = d2 * d2 * d2;
        v[i] = c6 / d6;
    }
}

void susceptibility_scalar(const ChiConsts& c, const double* v, std::size_t n,
                           double* pp_re, double* pp_im, double* pm_re,
                           double* pm_im) {
    for (std::size_t i = 0; i < n; ++i) {
        const double w = v[i] - c.delta_r;
        const double num_re = w * c.a_re + c.b;
        const double num_im = w * c.a_im;
        const double den_re = w * c.c_re + c.b;
        const double den_im = w * c.c_im;
        const double inv = 1.0 / (den_re * den_re + den_im * den_im);
        // q = num / den
        const double q_re = (num_re * den_re + num_im * den_im) * inv;
        const double q_im = (num_im * den_re - num_re * den_im) * inv;
        // chi_pp = -i * k1 * q
        pp_re[i] = c.k1 * q_im;
        pp_im[i] = -c.k1 * q_re;
        // chi_pm = k3 * w / den
        pm_re[i] = c.k3 * w * den_re * inv;
        pm_im[i] = -c.k3 * w * den_im * inv;
    }
}

void transfer_chain_scalar(const double* pp_re, const double* pp_im,
                           const double* pm_re, const double* pm_im,
                           const double* dz, std::size_t n, Mat2& u) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx pp(pp_re[i], pp_im[i]);
        const cplx pm(pm_re[i], pm_im[i]);
        const double h = dz[i];
        const cplx lam2 = pp * pp - pm * pm;
        const cplx w = lam2 * (h * h);  // (lambda*dz)^2
        cplx cosv, sincv;
        if (std::norm(w) <= detail::kSeriesDomainSq) {
            cosv = detail::cos_from_square(w);
            sincv = detail::sinc_from_square(w);
        } else {
            const cplx x = std::sqrt(w);
            cosv = std::cos(x);
            sincv = std::sin(x) / x;
        }
        const cplx s = sincv * h;
        const cplx spp = s * pp;
        const cplx spm = s * pm;
        const cplx e00 = cosv - cplx(0.0, 1.0) * spp;
        const cplx e01 = -cplx(0.0, 1.0) * spm;
        const cplx e10 = cplx(0.0, 1.0) * spm;
        const cplx e11 = cosv + cplx(0.0, 1.0) * spp;
        const cplx r00 = e00 * u.m00 + e01 * u.m10;
        const cplx r01 = e00 * u.m01 + e01 * u.m11;
        const cplx r10 = e10 * u.m00 + e11 * u.m10;
        const cplx r11 = e10 * u.m01 + e11 * u.m11;
        u = {r00, r01, r10, r11};
    }
}

constexpr KernelTable kScalarTable{"scalar", &vdw_shift_scalar,
                                   &susceptibility_scalar,
                                   &transfer_chain_scalar};

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* detect() {
    if (const char* env = std::getenv("SRP_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &kScalarTable;
        if (std::strcmp(env, "avx2") == 0 && avx2_available())
            return avx2_table();
    }
    if (avx2_available()) return avx2_table();
    return &kScalarTable;
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

const KernelTable& scalar_table() { return kScalarTable; }

bool avx2_available() { return avx2_table() != nullptr && cpu_has_avx2_fma(); }

const KernelTable& active() {
    const KernelTable* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = detect();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void force_backend(Backend b) {
    switch (b) {
        case Backend::auto_detect:
            g_active.store(detect(), std::memory_order_release);
            break;
        case Backend::scalar:
            g_active.store(&kScalarTable, std::memory_order_release);
            break;
        case Backend::avx2:
            if (!avx2_available())
                throw Error("avx2 kernels unavailable on this CPU/build");
            g_active.store(avx2_table(), std::memory_order_release);
            break;
    }
}

}  // namespace srp::kernels
