#pragma once

#include <complex>

// Shared series policy for exp(-i*M*dz) slab factors. Both backends evaluate
// cos(x) and sinc(x) = sin(x)/x as degree-6 polynomials in w = x^2 whenever
// |w|^2 <= kSeriesDomainSq (|x| <= 0.25); the truncation error is below
// 1e-19 there. Wider slabs fall back to exact complex trig.

namespace srp::kernels::detail {

inline constexpr double kSeriesDomain = 0.0625;  // max |x^2|
inline constexpr double kSeriesDomainSq = kSeriesDomain * kSeriesDomain;

// (-1)^m / (2m)!
inline constexpr double kCosCoef[7] = {
    1.0,
    -1.0 / 2.0,
    1.0 / 24.0,
    -1.0 / 720.0,
    1.0 / 40320.0,
    -1.0 / 3628800.0,
    1.0 / 479001600.0,
};

// (-1)^m / (2m+1)!
inline constexpr double kSincCoef[7] = {
    1.0,
    -1.0 / 6.0,
    1.0 / 120.0,
    -1.0 / 5040.0,
    1.0 / 362880.0,
    -1.0 / 39916800.0,
    1.0 / 6227020800.0,
};

inline std::complex<double> horner7(const double (&c)[7],
                                    std::complex<double> w) {
    std::complex<double> acc(c[6], 0.0);
    for (int m = 5; m >= 0; --m) acc = acc * w + c[m];
    return acc;
}

inline std::complex<double> cos_from_square(std::complex<double> w) {
    return horner7(kCosCoef, w);
}

inline std::complex<double> sinc_from_square(std::complex<double> w) {
    return horner7(kSincCoef, w);
}

}  // namespace srp::kernels::detail
