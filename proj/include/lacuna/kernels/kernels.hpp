#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lacuna/errors.hpp"

namespace lacuna::kernels {

// Runtime-selected implementation of the hot loops.  Scalar is the portable
// reference; the AVX2 variant is required to agree with it bit for bit and is
// picked automatically when the CPU supports it.
enum class Backend { scalar, avx2 };

bool supported(Backend b);
Backend active_backend();
void set_backend(Backend b);  // throws ConfigError when unsupported
const char* backend_name(Backend b);

// Angles are handled as binary fractions of a turn: a PhaseBlock stores, for
// each point x, the fixed-point expansion of frac(x / 2pi) to nlimbs 64-bit
// limbs.  The phase of the frequency-2^n term is then just the 64-bit window
// at bit offset n — products by powers of two become shifts, and no frequency
// up to 2^kMaxFreqBit loses accuracy to range reduction.
inline constexpr int kMaxFreqBit = 1536;

struct PhaseBlock {
    int npoints = 0;
    int nlimbs = 0;
    // limb-major: limbs[l * npoints + i] is limb l of point i (l = 0 holds the
    // most significant 64 fraction bits)
    std::vector<std::uint64_t> limbs;

    // Phases of arbitrary doubles, via the extended-precision 1/(2pi) table.
    static PhaseBlock from_points(std::span<const double> xs, int max_freq_bit);
    // Exact rational phases k_i / 2^log2_denom turns (quadrature nodes).
    static PhaseBlock from_turns(std::span<const std::uint64_t> numer, int log2_denom,
                                 int max_freq_bit);

    std::uint64_t window(int point, int bit) const {
        int q = bit >> 6, s = bit & 63;
        std::uint64_t hi = limbs[static_cast<size_t>(q) * npoints + point];
        if (s == 0) return hi;
        std::uint64_t lo = limbs[static_cast<size_t>(q + 1) * npoints + point];
        return (hi << s) | (lo >> (64 - s));
    }
};

// One lacunary partial sum: for each point i,
//   out[i] = sum_t amp[t] * cos(2pi * frac(2^(n0+t) x_i) + quad * pi/2),
// accumulated left to right with Neumaier compensation.
struct DyadicSum {
    int n0 = 0;               // first frequency exponent
    std::uint32_t quad = 0;   // quadrant offset (derivative order mod 4)
    std::span<const double> amp;
};

void accumulate(const DyadicSum& sum, const PhaseBlock& phases, std::span<double> out, Backend b);
inline void accumulate(const DyadicSum& sum, const PhaseBlock& phases, std::span<double> out) {
    accumulate(sum, phases, out, active_backend());
}

// cos(2pi * (w / 2^64) + quad * pi/2) for a single phase word.
double turn_cos(std::uint64_t w, std::uint32_t quad);

// Dense polynomial evaluation, out[i] = sum_k coeffs[k] * t[i]^k (Horner).
void poly_batch(std::span<const double> coeffs, std::span<const double> t, std::span<double> out,
                Backend b);
inline void poly_batch(std::span<const double> coeffs, std::span<const double> t,
                       std::span<double> out) {
    poly_batch(coeffs, t, out, active_backend());
}

// Internal entry points (exposed so the equivalence tests can target each
// implementation regardless of the dispatch state).
namespace detail {
void accumulate_scalar(const DyadicSum&, const PhaseBlock&, std::span<double>);
void accumulate_avx2(const DyadicSum&, const PhaseBlock&, std::span<double>);
void poly_batch_scalar(std::span<const double>, std::span<const double>, std::span<double>);
void poly_batch_avx2(std::span<const double>, std::span<const double>, std::span<double>);
bool avx2_available();
}  // namespace detail

}  // namespace lacuna::kernels
