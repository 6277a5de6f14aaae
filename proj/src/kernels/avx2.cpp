#include <immintrin.h>

#include "lacuna/kernels/kernels.hpp"
#include "lacuna/kernels/trig_core.hpp"

// Four-lane mirror of the scalar pipeline in trig_core.hpp.  Every arithmetic
// step matches the scalar sequence 1:1 (same fma placement, same rounding
// count), so per-point results are bitwise identical to the scalar backend.

namespace lacuna::kernels::detail {

namespace {

// Exact for v < 2^63: split into 32-bit halves, rebuild via the 2^52/2^84
// exponent trick; the single final add performs the one rounding that the
// scalar u64->double conversion performs.
inline __m256d u64_to_double(__m256i v) {
    const __m256d k84 = _mm256_set1_pd(19342813113834066795298816.0);          // 2^84
    const __m256d k84_52 = _mm256_set1_pd(19342813118337666422669312.0);       // 2^84 + 2^52
    const __m256d k52 = _mm256_set1_pd(0x1p52);
    __m256i hi = _mm256_srli_epi64(v, 32);
    hi = _mm256_or_si256(hi, _mm256_castpd_si256(k84));
    __m256i lo = _mm256_blend_epi32(v, _mm256_castpd_si256(k52), 0xAA);
    __m256d f = _mm256_sub_pd(_mm256_castsi256_pd(hi), k84_52);  // hi*2^32 - 2^52, exact
    return _mm256_add_pd(f, _mm256_castsi256_pd(lo));            // + (2^52 + lo): one rounding
}

inline __m256d sin4(__m256d t) {
    __m256d z = _mm256_mul_pd(t, t);
    __m256d p = _mm256_set1_pd(core::kSinCoef[0]);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(core::kSinCoef[1]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(core::kSinCoef[2]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(core::kSinCoef[3]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(core::kSinCoef[4]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(core::kSinCoef[5]));
    return _mm256_fmadd_pd(_mm256_mul_pd(t, z), p, t);
}

inline __m256d cos4(__m256d t) {
    __m256d z = _mm256_mul_pd(t, t);
    __m256d p = _mm256_set1_pd(core::kCosCoef[0]);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(core::kCosCoef[1]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(core::kCosCoef[2]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(core::kCosCoef[3]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(core::kCosCoef[4]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(core::kCosCoef[5]));
    __m256d c = _mm256_fmadd_pd(z, _mm256_set1_pd(-0.5), _mm256_set1_pd(1.0));
    return _mm256_fmadd_pd(_mm256_mul_pd(z, z), p, c);
}

// cos(2pi*(w/2^64) + quad*pi/2) for four phase words.
inline __m256d turn_cos4(__m256i w, std::uint32_t quad) {
    const __m256i offset =
        _mm256_set1_epi64x(static_cast<long long>((static_cast<std::uint64_t>(quad) << 62) +
                                                  (1ull << 61)));
    __m256i ww = _mm256_add_epi64(w, offset);
    __m256i q = _mm256_srli_epi64(ww, 62);
    __m256i frac = _mm256_and_si256(ww, _mm256_set1_epi64x((1ll << 62) - 1));
    __m256d theta = _mm256_fmadd_pd(u64_to_double(frac), _mm256_set1_pd(core::kPiScale),
                                    _mm256_set1_pd(-core::kPiQuarter));
    __m256d s = sin4(theta);
    __m256d c = cos4(theta);
    __m256i one = _mm256_set1_epi64x(1);
    __m256i b0 = _mm256_and_si256(q, one);
    __m256d base = _mm256_blendv_pd(c, s, _mm256_castsi256_pd(_mm256_cmpeq_epi64(b0, one)));
    __m256i negbit = _mm256_and_si256(_mm256_xor_si256(q, _mm256_srli_epi64(q, 1)), one);
    __m256d sign = _mm256_castsi256_pd(_mm256_slli_epi64(negbit, 63));
    return _mm256_xor_pd(base, sign);
}

inline __m256d abs4(__m256d v) {
    return _mm256_and_pd(v, _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll)));
}

}  // namespace

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

void accumulate_avx2(const DyadicSum& s, const PhaseBlock& pb, std::span<double> out) {
    const int T = static_cast<int>(s.amp.size());
    const int n = pb.npoints;
    const auto* limbs = pb.limbs.data();
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sum = _mm256_setzero_pd();
        __m256d comp = _mm256_setzero_pd();
        for (int t = 0; t < T; ++t) {
            const int bit = s.n0 + t;
            const int ql = bit >> 6, sh = bit & 63;
            __m256i hi = _mm256_loadu_si256(
                reinterpret_cast<const __m256i*>(limbs + static_cast<size_t>(ql) * n + i));
            __m256i w;
            if (sh == 0) {
                w = hi;
            } else {
                __m256i lo = _mm256_loadu_si256(
                    reinterpret_cast<const __m256i*>(limbs + static_cast<size_t>(ql + 1) * n + i));
                w = _mm256_or_si256(_mm256_slli_epi64(hi, sh), _mm256_srli_epi64(lo, 64 - sh));
            }
            __m256d trig = turn_cos4(w, s.quad);
            __m256d v = _mm256_mul_pd(_mm256_set1_pd(s.amp[t]), trig);
            __m256d tt = _mm256_add_pd(sum, v);
            __m256d big = _mm256_cmp_pd(abs4(sum), abs4(v), _CMP_GE_OQ);
            __m256d c1 = _mm256_add_pd(_mm256_sub_pd(sum, tt), v);
            __m256d c2 = _mm256_add_pd(_mm256_sub_pd(v, tt), sum);
            comp = _mm256_add_pd(comp, _mm256_blendv_pd(c2, c1, big));
            sum = tt;
        }
        _mm256_storeu_pd(out.data() + i, _mm256_add_pd(sum, comp));
    }
    for (; i < n; ++i) {  // remainder: the scalar core, point by point
        double sum = 0.0, comp = 0.0;
        for (int t = 0; t < T; ++t) {
            double trig = core::turn_cos_core(pb.window(i, s.n0 + t), s.quad);
            core::neumaier_add(sum, comp, s.amp[t] * trig);
        }
        out[i] = sum + comp;
    }
}

void poly_batch_avx2(std::span<const double> coeffs, std::span<const double> t,
                     std::span<double> out) {
    const auto K = coeffs.size();
    size_t i = 0;
    for (; i + 4 <= t.size(); i += 4) {
        __m256d x = _mm256_loadu_pd(t.data() + i);
        __m256d r = _mm256_setzero_pd();
        for (size_t k = K; k-- > 0;) r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(coeffs[k]));
        _mm256_storeu_pd(out.data() + i, r);
    }
    for (; i < t.size(); ++i) {
        double r = 0.0;
        for (size_t k = K; k-- > 0;) r = std::fma(r, t[i], coeffs[k]);
        out[i] = r;
    }
}

}  // namespace lacuna::kernels::detail
