#pragma once

#include <complex>
#include <cstddef>

namespace srp::kernels {

using cplx = std::complex<double>;

/// 2x2 complex matrix, row-major. The transfer engine works on these.
struct Mat2 {
    cplx m00{1.0, 0.0}, m01{0.0, 0.0};
    cplx m10{0.0, 0.0}, m11{1.0, 0.0};
};

/// Constants of the two-mode susceptibility rational function
///   chi_pp(V) = -i*k1 * (w*A + B) / (w*C + B),   w = V - delta_r,
///   chi_pm(V) =    k3 *  w        / (w*C + B),
/// with A = gammabar*delta - i*omega_c^2, C = gammabar*delta - 2i*omega_c^2,
/// B = gammabar*omega_s^2, k1 = G^2/(c*gammabar), k3 = k1*omega_c^2.
struct ChiConsts {
    double a_re, a_im;
    double c_re, c_im;
    double b;
    double k1;
    double k3;
    double delta_r;
};

/// One backend's set of array kernels. All kernels are pure element-wise or
/// left-fold operations; the scalar table is the reference semantics and the
/// SIMD tables must agree with it to floating-point reordering accuracy.
struct KernelTable {
    const char* name;

    /// v[i] = c6 / (z[i] - z0)^6. A distance of exactly zero yields +inf.
    void (*vdw_shift)(const double* z, std::size_t n, double c6, double z0,
                      double* v);

    /// Element-wise chi evaluation. v[i] must be finite; poles produce
    /// non-finite outputs that callers are expected to detect.
    void (*susceptibility)(const ChiConsts& c, const double* v, std::size_t n,
                           double* pp_re, double* pp_im, double* pm_re,
                           double* pm_im);

    /// u <- slab(n-1) * ... * slab(1) * slab(0) * u, where slab(i) is
    /// exp(-i*M_i*dz[i]) for M_i = [[pp_i, pm_i], [-pm_i, -pp_i]], evaluated
    /// through cos/sinc series of lambda^2*dz^2 (exact trig fallback for
    /// wide slabs). Each slab has unit determinant up to roundoff.
    void (*transfer_chain)(const double* pp_re, const double* pp_im,
                           const double* pm_re, const double* pm_im,
                           const double* dz, std::size_t n, Mat2& u);
};

enum class Backend { auto_detect, scalar, avx2 };

/// Runtime-selected kernel table. Defaults to the widest backend the CPU
/// supports; the SRP_KERNELS environment variable ("scalar" | "avx2") or
/// force_backend() override the choice.
const KernelTable& active();

/// Forces a backend; throws srp::Error if it is unavailable on this CPU.
/// Backend::auto_detect restores the default selection.
void force_backend(Backend b);

bool avx2_available();

/// The reference table, always available (used by equivalence tests).
const KernelTable& scalar_table();
/// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

}  // namespace srp::kernels
