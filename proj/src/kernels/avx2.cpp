#include "srp/kernels.hpp"
#include "srp_kernel_series.hpp"

#if defined(SRP_COMPILE_AVX2) && (defined(__x86_64__) || defined(_M_X64))

#include <immintrin.h>

#include <cmath>
#include <complex>

namespace srp::kernels {
namespace {

void vdw_shift_avx2(const double* z, std::size_t n, double c6, double z0,
                    double* v) {
    const __m256d vz0 = _mm256_set1_pd(z0);
    const __m256d vc6 = _mm256_set1_pd(c6);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(z + i), vz0);
        const __m256d d2 = _mm256_mul_pd(d, d);
        const __m256d d6 = _mm256_mul_pd(_mm256_mul_pd(d2, d2), d2);
        _mm256_storeu_pd(v + i, _mm256_div_pd(vc6, d6));
    }
    for (; i < n; ++i) {
        const double d = z[i] - z0;
        const double d2 = d * d;
        v[i] = c6 / (d2 * d2 * d2);
    }
}

void susceptibility_avx2(const ChiConsts& c, const double* v, std::size_t n,
                         double* pp_re, double* pp_im, double* pm_re,
                         double* pm_im) {
    const __m256d dr = _mm256_set1_pd(c.delta_r);
    const __m256d are = _mm256_set1_pd(c.a_re), aim = _mm256_set1_pd(c.a_im);
    const __m256d cre = _mm256_set1_pd(c.c_re), cim = _mm256_set1_pd(c.c_im);
    const __m256d b = _mm256_set1_pd(c.b);
    const __m256d k1 = _mm256_set1_pd(c.k1), k3 = _mm256_set1_pd(c.k3);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d w = _mm256_sub_pd(_mm256_loadu_pd(v + i), dr);
        const __m256d num_re = _mm256_fmadd_pd(w, are, b);
        const __m256d num_im = _mm256_mul_pd(w, aim);
        const __m256d den_re = _mm256_fmadd_pd(w, cre, b);
        const __m256d den_im = _mm256_mul_pd(w, cim);
        const __m256d d2 =
            _mm256_fmadd_pd(den_re, den_re, _mm256_mul_pd(den_im, den_im));
        const __m256d inv = _mm256_div_pd(one, d2);
        const __m256d q_re = _mm256_mul_pd(
            _mm256_fmadd_pd(num_re, den_re, _mm256_mul_pd(num_im, den_im)),
            inv);
        const __m256d q_im = _mm256_mul_pd(
            _mm256_fmsub_pd(num_im, den_re, _mm256_mul_pd(num_re, den_im)),
            inv);
        _mm256_storeu_pd(pp_re + i, _mm256_mul_pd(k1, q_im));
        _mm256_storeu_pd(pp_im + i,
                         _mm256_sub_pd(_mm256_setzero_pd(),
                                       _mm256_mul_pd(k1, q_re)));
        const __m256d k3w = _mm256_mul_pd(k3, _mm256_mul_pd(w, inv));
        _mm256_storeu_pd(pm_re + i, _mm256_mul_pd(k3w, den_re));
        _mm256_storeu_pd(pm_im + i, _mm256_sub_pd(_mm256_setzero_pd(),
                                                  _mm256_mul_pd(k3w, den_im)));
    }
    for (; i < n; ++i) {
        const double w = v[i] - c.delta_r;
        const double num_re = w * c.a_re + c.b;
        const double num_im = w * c.a_im;
        const double den_re = w * c.c_re + c.b;
        const double den_im = w * c.c_im;
        const double inv = 1.0 / (den_re * den_re + den_im * den_im);
        const double q_re = (num_re * den_re + num_im * den_im) * inv;
        const double q_im = (num_im * den_re - num_re * den_im) * inv;
        pp_re[i] = c.k1 * q_im;
        pp_im[i] = -c.k1 * q_re;
        pm_re[i] = c.k3 * w * den_re * inv;
        pm_im[i] = -c.k3 * w * den_im * inv;
    }
}

// Broadcast complex element W (0 or 1) of `row` and multiply with the packed
// complex pair `v` = [re0, im0, re1, im1].
template <int W>
inline __m256d cbcast_mul(__m256d row, __m256d v) {
    const __m256d ar = _mm256_permute4x64_pd(row, W == 0 ? 0x00 : 0xAA);
    const __m256d ai = _mm256_permute4x64_pd(row, W == 0 ? 0x55 : 0xFF);
    const __m256d vs = _mm256_permute_pd(v, 0x5);
    return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, vs));
}

constexpr std::size_t kBlock = 256;

void transfer_chain_avx2(const double* pp_re, const double* pp_im,
                         const double* pm_re, const double* pm_im,
                         const double* dz, std::size_t n, Mat2& u) {
    using std::complex;
    alignas(32) double c_re[kBlock], c_im[kBlock];
    alignas(32) double spp_re[kBlock], spp_im[kBlock];
    alignas(32) double spm_re[kBlock], spm_im[kBlock];

    __m256d u0 = _mm256_setr_pd(u.m00.real(), u.m00.imag(), u.m01.real(),
                                u.m01.imag());
    __m256d u1 = _mm256_setr_pd(u.m10.real(), u.m10.imag(), u.m11.real(),
                                u.m11.imag());

    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d domain = _mm256_set1_pd(detail::kSeriesDomainSq);

    for (std::size_t base = 0; base < n; base += kBlock) {
        const std::size_t m = (n - base < kBlock) ? (n - base) : kBlock;
        std::size_t i = 0;
        for (; i + 4 <= m; i += 4) {
            const std::size_t g = base + i;
            const __m256d pr = _mm256_loadu_pd(pp_re + g);
            const __m256d pi = _mm256_loadu_pd(pp_im + g);
            const __m256d qr = _mm256_loadu_pd(pm_re + g);
            const __m256d qi = _mm256_loadu_pd(pm_im + g);
            const __m256d h = _mm256_loadu_pd(dz + g);
            // w = (pp^2 - pm^2) * dz^2
            const __m256d l2re =
                _mm256_sub_pd(_mm256_fmsub_pd(pr, pr, _mm256_mul_pd(pi, pi)),
                              _mm256_fmsub_pd(qr, qr, _mm256_mul_pd(qi, qi)));
            const __m256d l2im = _mm256_mul_pd(
                two, _mm256_fmsub_pd(pr, pi, _mm256_mul_pd(qr, qi)));
            const __m256d h2 = _mm256_mul_pd(h, h);
            const __m256d wre = _mm256_mul_pd(l2re, h2);
            const __m256d wim = _mm256_mul_pd(l2im, h2);
            // Horner in the complex variable w for cos and sinc
            __m256d cosr = _mm256_set1_pd(detail::kCosCoef[6]);
            __m256d cosi = _mm256_setzero_pd();
            __m256d sinr = _mm256_set1_pd(detail::kSincCoef[6]);
            __m256d sini = _mm256_setzero_pd();
            for (int t = 5; t >= 0; --t) {
                const __m256d nr = _mm256_add_pd(
                    _mm256_fmsub_pd(cosr, wre, _mm256_mul_pd(cosi, wim)),
                    _mm256_set1_pd(detail::kCosCoef[t]));
                const __m256d ni =
                    _mm256_fmadd_pd(cosr, wim, _mm256_mul_pd(cosi, wre));
                cosr = nr;
                cosi = ni;
                const __m256d mr = _mm256_add_pd(
                    _mm256_fmsub_pd(sinr, wre, _mm256_mul_pd(sini, wim)),
                    _mm256_set1_pd(detail::kSincCoef[t]));
                const __m256d mi =
                    _mm256_fmadd_pd(sinr, wim, _mm256_mul_pd(sini, wre));
                sinr = mr;
                sini = mi;
            }
            // s = sinc * dz; spp = s*pp; spm = s*pm
            const __m256d sr = _mm256_mul_pd(sinr, h);
            const __m256d si = _mm256_mul_pd(sini, h);
            _mm256_store_pd(c_re + i, cosr);
            _mm256_store_pd(c_im + i, cosi);
            _mm256_store_pd(spp_re + i,
                            _mm256_fmsub_pd(sr, pr, _mm256_mul_pd(si, pi)));
            _mm256_store_pd(spp_im + i,
                            _mm256_fmadd_pd(sr, pi, _mm256_mul_pd(si, pr)));
            _mm256_store_pd(spm_re + i,
                            _mm256_fmsub_pd(sr, qr, _mm256_mul_pd(si, qi)));
            _mm256_store_pd(spm_im + i,
                            _mm256_fmadd_pd(sr, qi, _mm256_mul_pd(si, qr)));
            // wide slabs: exact trig fixup, lane by lane
            const __m256d nw =
                _mm256_fmadd_pd(wre, wre, _mm256_mul_pd(wim, wim));
            const int bad =
                _mm256_movemask_pd(_mm256_cmp_pd(nw, domain, _CMP_GT_OQ));
            if (bad) {
                for (int lane = 0; lane < 4; ++lane) {
                    if (!(bad & (1 << lane))) continue;
                    const std::size_t j = g + lane;
                    const complex<double> pp(pp_re[j], pp_im[j]);
                    const complex<double> pm(pm_re[j], pm_im[j]);
                    const complex<double> w =
                        (pp * pp - pm * pm) * (dz[j] * dz[j]);
                    const complex<double> x = std::sqrt(w);
                    const complex<double> cosv = std::cos(x);
                    const complex<double> s = std::sin(x) / x * dz[j];
                    const complex<double> spp = s * pp;
                    const complex<double> spm = s * pm;
                    c_re[i + lane] = cosv.real();
                    c_im[i + lane] = cosv.imag();
                    spp_re[i + lane] = spp.real();
                    spp_im[i + lane] = spp.imag();
                    spm_re[i + lane] = spm.real();
                    spm_im[i + lane] = spm.imag();
                }
            }
        }
        for (; i < m; ++i) {
            const std::size_t j = base + i;
            const complex<double> pp(pp_re[j], pp_im[j]);
            const complex<double> pm(pm_re[j], pm_im[j]);
            const complex<double> w = (pp * pp - pm * pm) * (dz[j] * dz[j]);
            complex<double> cosv, sincv;
            if (std::norm(w) <= detail::kSeriesDomainSq) {
                cosv = detail::cos_from_square(w);
                sincv = detail::sinc_from_square(w);
            } else {
                const complex<double> x = std::sqrt(w);
                cosv = std::cos(x);
                sincv = std::sin(x) / x;
            }
            const complex<double> s = sincv * dz[j];
            const complex<double> spp = s * pp;
            const complex<double> spm = s * pm;
            c_re[i] = cosv.real();
            c_im[i] = cosv.imag();
            spp_re[i] = spp.real();
            spp_im[i] = spp.imag();
            spm_re[i] = spm.real();
            spm_im[i] = spm.imag();
        }
        // sequential left-multiplication by each slab
        for (std::size_t s = 0; s < m; ++s) {
            const __m256d e0 =
                _mm256_setr_pd(c_re[s] + spp_im[s], c_im[s] - spp_re[s],
                               spm_im[s], -spm_re[s]);
            const __m256d e1 =
                _mm256_setr_pd(-spm_im[s], spm_re[s], c_re[s] - spp_im[s],
                               c_im[s] + spp_re[s]);
            const __m256d n0 =
                _mm256_add_pd(cbcast_mul<0>(e0, u0), cbcast_mul<1>(e0, u1));
            const __m256d n1 =
                _mm256_add_pd(cbcast_mul<0>(e1, u0), cbcast_mul<1>(e1, u1));
            u0 = n0;
            u1 = n1;
        }
    }

    alignas(32) double out[4];
    _mm256_store_pd(out, u0);
    u.m00 = {out[0], out[1]};
    u.m01 = {out[2], out[3]};
    _mm256_store_pd(out, u1);
    u.m10 = {out[0], out[1]};
    u.m11 = {out[2], out[3]};
}

constexpr KernelTable kAvx2Table{"avx2", &vdw_shift_avx2, &susceptibility_avx2,
                                 &transfer_chain_avx2};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2Table; }

}  // namespace srp::kernels

#else

namespace srp::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace srp::kernels

#endif
