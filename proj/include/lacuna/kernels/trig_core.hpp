#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

// Scalar reference pipeline from a 64-bit turn fraction to a trig value.
// Every operation here has an exact AVX2 counterpart; the SIMD file mirrors
// this sequence instruction by instruction, which is what makes the two
// backends bitwise-identical (given fma and no contraction surprises).

namespace lacuna::kernels::core {

// Minimax coefficients for sin/cos on [-pi/4, pi/4] (classic Cephes set;
// max residual ~8e-18, below double rounding).
inline constexpr double kSinCoef[6] = {
    1.58962301576546568060e-10, -2.50507477628578072866e-8,
    2.75573136213857245213e-6,  -1.98412698295895385996e-4,
    8.33333333332211858878e-3,  -1.66666666666666307295e-1,
};
inline constexpr double kCosCoef[6] = {
    -1.13585365213876817300e-11, 2.08757008419747316778e-9,
    -2.75573141792967388112e-7,  2.48015872888517179954e-5,
    -1.38888888888730564116e-3,  4.16666666666665929218e-2,
};

// pi * 2^-63: maps a 62-bit quadrant fraction, recentred by 2^61, to radians.
inline constexpr double kPiScale = 0x1.921fb54442d18p-62;
inline constexpr double kPiQuarter = 0x1.921fb54442d18p-1;

struct QTheta {
    std::uint64_t quadrant;  // low two bits select/sign the result
    double theta;            // in [-pi/4, pi/4]
};

// Fold phase + quadrant offset into (quadrant, reduced angle).  All of it in
// integers: adding quad*2^62 rotates, adding 2^61 recentres so truncation of
// the top two bits rounds the quadrant to nearest.
inline QTheta phase_decompose(std::uint64_t w, std::uint32_t quad) {
    std::uint64_t ww = w + (static_cast<std::uint64_t>(quad) << 62) + (1ull << 61);
    std::uint64_t q = ww >> 62;
    double frac = static_cast<double>(ww & ((1ull << 62) - 1));
    double theta = std::fma(frac, kPiScale, -kPiQuarter);
    return {q, theta};
}

inline double sin_kernel(double t) {
    double z = t * t;
    double p = kSinCoef[0];
    p = std::fma(p, z, kSinCoef[1]);
    p = std::fma(p, z, kSinCoef[2]);
    p = std::fma(p, z, kSinCoef[3]);
    p = std::fma(p, z, kSinCoef[4]);
    p = std::fma(p, z, kSinCoef[5]);
    return std::fma(t * z, p, t);
}

inline double cos_kernel(double t) {
    double z = t * t;
    double p = kCosCoef[0];
    p = std::fma(p, z, kCosCoef[1]);
    p = std::fma(p, z, kCosCoef[2]);
    p = std::fma(p, z, kCosCoef[3]);
    p = std::fma(p, z, kCosCoef[4]);
    p = std::fma(p, z, kCosCoef[5]);
    double c = std::fma(z, -0.5, 1.0);
    return std::fma(z * z, p, c);
}

// cos rotated by quadrant*pi/2: pick cos/sin by bit 0, negate by bit0^bit1.
inline double select_cos(const QTheta& qt) {
    double s = sin_kernel(qt.theta);
    double c = cos_kernel(qt.theta);
    std::uint64_t b0 = qt.quadrant & 1;
    std::uint64_t neg = ((qt.quadrant ^ (qt.quadrant >> 1)) & 1) << 63;
    double base = b0 ? s : c;
    return std::bit_cast<double>(std::bit_cast<std::uint64_t>(base) ^ neg);
}

inline double turn_cos_core(std::uint64_t w, std::uint32_t quad) {
    return select_cos(phase_decompose(w, quad));
}

// One Neumaier step; the caller keeps (sum, comp) and finishes with sum+comp.
inline void neumaier_add(double& sum, double& comp, double v) {
    double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
        comp += (sum - t) + v;
    else
        comp += (v - t) + sum;
    sum = t;
}

}  // namespace lacuna::kernels::core
