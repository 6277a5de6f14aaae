#include <cmath>
#include <cstring>

#include "lacuna/kernels/kernels.hpp"

namespace lacuna::kernels {

namespace {

// 1/(2pi) to 3072 fraction bits; limb t holds bits [64t, 64t+64) after the
// binary point.  Generated once at high precision and frozen.
constexpr std::uint64_t kInv2Pi[48] = {
    0x28be60db9391054aull, 0x7f09d5f47d4d3770ull, 0x36d8a5664f10e410ull, 0x7f9458eaf7aef158ull,
    0x6dc91b8e909374b8ull, 0x01924bba82746487ull, 0x3f877ac72c4a69cfull, 0xba208d7d4baed121ull,
    0x3a671c09ad17df90ull, 0x4e64758e60d4ce7dull, 0x272117e2ef7e4a0eull, 0xc7fe25fff7816603ull,
    0xfbcbc462d6829b47ull, 0xdb4d9fb3c9f2c26dull, 0xd3d18fd9a797fa8bull, 0x5d49eeb1faf97c5eull,
    0xcf41ce7de294a4baull, 0x9afed7ec47e35742ull, 0x1580cc11bf1edaeaull, 0xfc33ef0826bd0d87ull,
    0x6a78e45857b986c2ull, 0x19666157c5281a10ull, 0x237ff620135cc9ccull, 0x41818555b29cea32ull,
    0x58389ef0231ad1f1ull, 0x0670d9f3773a024aull, 0xa0d6711da2e58729ull, 0xb76bd13455c6414full,
    0xa97fc1c14fdf8cfaull, 0x0cb0b793e60c9f6eull, 0xf0cf49bbdac797beull, 0x27ce87cd72bc9fc7ull,
    0x61fc48641f1f091aull, 0xbe9bb55dcb4c10ceull, 0xc571852d674670f0ull, 0xb12b50534b174003ull,
    0x119f618b5c78e6b1ull, 0xa6c0188cdf34ad25ull, 0xe9ed35554dfd8fb5ull, 0xc60428ff1d934aa7ull,
    0x592af5dc3e1f18d5ull, 0xec1eb9c545d59270ull, 0x36758ece2129f2c8ull, 0xc91de2b588d516aeull,
    0x47c006c2bc77f386ull, 0x7fcc67da87999855ull, 0xe651feeb361fdfadull, 0xd948a27a0c982ff9ull,
};
constexpr int kTableLimbs = 48;

// Fixed-point accumulator for one point: W[w] covers binary exponents
// [base + 64w, base + 64w + 63], little-endian, base = -64*NW.  Two limbs
// below the published fraction act as guard bits; carries off the top fall
// into the (discarded) integer part.
struct Accum {
    static constexpr int kGuard = 2;
    std::vector<std::uint64_t> W;
    int NW;
    explicit Accum(int frac_limbs) : W(static_cast<size_t>(frac_limbs + kGuard), 0),
                                     NW(frac_limbs + kGuard) {}
    long long base() const { return -64LL * NW; }

    void add_word(std::uint64_t c, long long lsb_exp) {
        if (c == 0) return;
        long long off = lsb_exp - base();
        long long w = off >> 6;
        int r = static_cast<int>(off & 63);
        if (w >= NW) return;  // integer territory only
        if (r == 0) {
            if (w >= 0) carry_add(w, c);
        } else {
            if (w >= 0) carry_add(w, c << r);
            if (w + 1 >= 0 && w + 1 < NW) carry_add(w + 1, c >> (64 - r));
        }
    }

    void carry_add(long long w, std::uint64_t v) {
        while (w < NW && v) {
            std::uint64_t old = W[static_cast<size_t>(w)];
            W[static_cast<size_t>(w)] = old + v;
            v = (W[static_cast<size_t>(w)] < old) ? 1 : 0;  // carry up
            ++w;
        }
    }
};

void fill_fraction(double x, int frac_limbs, std::uint64_t* out /* out[l], l=0 most significant */) {
    if (!std::isfinite(x)) throw NumericError("phase construction: non-finite evaluation point");
    for (int l = 0; l < frac_limbs; ++l) out[l] = 0;
    if (x == 0.0) return;

    int E = 0;
    double fr = std::frexp(std::fabs(x), &E);
    auto m = static_cast<std::uint64_t>(std::ldexp(fr, 53));  // |x| = m * 2^(E-53)
    const long long e = static_cast<long long>(E) - 53;

    Accum acc(frac_limbs);
    for (int t = 0; t < kTableLimbs; ++t) {
        // table limb value: kInv2Pi[t] * 2^(-64(t+1)); product with m gives a
        // 128-bit chunk whose LSB sits at exponent e - 64(t+1)
        const long long p = e - 64LL * (t + 1);
        if (p >= 0) continue;             // entirely above the binary point
        if (p + 127 < acc.base()) break;  // below the guard: done
        unsigned __int128 prod = static_cast<unsigned __int128>(m) * kInv2Pi[t];
        acc.add_word(static_cast<std::uint64_t>(prod), p);
        acc.add_word(static_cast<std::uint64_t>(prod >> 64), p + 64);
    }
    // published fraction limb l covers exponents [-64(l+1), -64l-1]
    for (int l = 0; l < frac_limbs; ++l)
        out[l] = acc.W[static_cast<size_t>(acc.NW - 1 - l)];

    if (x < 0.0) {  // frac(-y) = 1 - frac(y), i.e. two's complement
        std::uint64_t carry = 1;
        for (int l = frac_limbs - 1; l >= 0; --l) {
            out[l] = ~out[l] + carry;
            carry = (carry && out[l] == 0) ? 1 : 0;
        }
    }
}

int limbs_for(int max_freq_bit) {
    if (max_freq_bit < 0 || max_freq_bit > kMaxFreqBit)
        throw ConfigError("phase construction: frequency bit out of range 0.." +
                          std::to_string(kMaxFreqBit));
    return max_freq_bit / 64 + 2;  // window at the top bit still has a low limb
}

}  // namespace

PhaseBlock PhaseBlock::from_points(std::span<const double> xs, int max_freq_bit) {
    const int L = limbs_for(max_freq_bit);
    PhaseBlock pb;
    pb.npoints = static_cast<int>(xs.size());
    pb.nlimbs = L;
    pb.limbs.assign(static_cast<size_t>(L) * xs.size(), 0);
    std::vector<std::uint64_t> tmp(static_cast<size_t>(L));
    for (size_t i = 0; i < xs.size(); ++i) {
        fill_fraction(xs[i], L, tmp.data());
        for (int l = 0; l < L; ++l)
            pb.limbs[static_cast<size_t>(l) * xs.size() + i] = tmp[static_cast<size_t>(l)];
    }
    return pb;
}

PhaseBlock PhaseBlock::from_turns(std::span<const std::uint64_t> numer, int log2_denom,
                                  int max_freq_bit) {
    if (log2_denom < 0 || log2_denom > 62)
        throw ConfigError("phase construction: log2 denominator out of range 0..62");
    const int L = limbs_for(max_freq_bit);
    PhaseBlock pb;
    pb.npoints = static_cast<int>(numer.size());
    pb.nlimbs = L;
    pb.limbs.assign(static_cast<size_t>(L) * numer.size(), 0);
    const std::uint64_t mask = (log2_denom == 0) ? 0 : (~0ull >> (64 - log2_denom));
    for (size_t i = 0; i < numer.size(); ++i) {
        std::uint64_t k = numer[i] & mask;  // reduce mod 2^p: whole turns drop out
        pb.limbs[i] = (log2_denom == 0) ? 0 : (k << (64 - log2_denom));
    }
    return pb;
}

}  // namespace lacuna::kernels
