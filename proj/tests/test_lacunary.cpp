#include "lacuna/lacunary.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

using lacuna::ConfigError;
using lacuna::LacunarySeries;
using lacuna::NumericError;
using lacuna::SeriesEvaluator;
using lacuna::WeightSequence;

namespace {
constexpr double kLn2 = 0.69314718055994530942;

// Independent 50-digit computations, frozen.  log a_n = ln tau(2^n) - n ln 2
// for the k=1 iterated-log weights, plus the attaining indices.
struct CoefRef {
    int n;
    double log_a;
    long long nu;
};
constexpr CoefRef kCoefK1[] = {
    {1, -1.386294361119890618834, 1},  {2, -2.772588722239781237669, 1},
    {3, -4.307002502914450360821, 2},  {4, -6.476958311980026184468, 3},
    {5, -9.559537434782510431651, 4},  {6, -14.24138620864633230462, 7},
    {7, -21.72444319347588746249, 13}, {8, -34.18011980637767256435, 22},
    {9, -55.55878321584886924278, 39}, {10, -93.08186647179997487021, 70},
    {11, -160.0096363771264244136, 127}, {12, -280.8433175818752885842, 231},
};
// Same for the table log M_j = j^2.
constexpr CoefRef kCoefSquare[] = {
    {1, -0.3862943611198906188345, 1}, {2, -1.772588722239781237669, 1},
    {5, -6.397207708399179641258, 2},  {9, -15.95329850015803113902, 3},
    {12, -25.58883083359671856503, 4},
};
// f^(j)(x) for the k=1 series (start 1, scale 1) at exact double arguments.
struct EvalRef {
    double x;
    int j;
    double value;
};
constexpr EvalRef kEvalK1[] = {
    {0.0, 0, 0.3275835391646226461066},   {0.3, 0, 0.2191114951069384183404},
    {0.3, 1, -0.5632395108276143718455},  {0.3, 5, 1408.237485934764873924},
    {1.7, 3, 11.15364482597798495512},    {0.03, 2, -3.218464131373222538398},
    {5.11, 0, -0.1881189300259452831038}, {2.25, 10, -802856846306.2354413214},
};

LacunarySeries k1_series() { return LacunarySeries(WeightSequence::iterated_log_family(1)); }

LacunarySeries square_series(double scale = 1.0) {
    std::vector<double> v;
    for (int j = 1; j <= 40; ++j) v.push_back(static_cast<double>(j) * j);
    return LacunarySeries(WeightSequence::custom(std::move(v), 1), 1, scale);
}
}  // namespace

TEST_CASE("coefficients match the frozen references") {
    auto s = k1_series();
    for (const auto& c : kCoefK1) {
        CAPTURE(c.n);
        CHECK(s.log_coefficient(c.n) == doctest::Approx(c.log_a).epsilon(1e-12));
        CHECK(s.coefficient_nu(c.n) == c.nu);
    }
    auto sq = square_series();
    for (const auto& c : kCoefSquare) {
        CAPTURE(c.n);
        CHECK(sq.log_coefficient(c.n) == doctest::Approx(c.log_a).epsilon(1e-12));
        CHECK(sq.coefficient_nu(c.n) == c.nu);
    }
}

TEST_CASE("coefficient bound a_n <= M_j 2^(-(j+1)n) in the log domain") {
    auto s = k1_series();
    const auto& seq = s.sequence();
    for (int n = 1; n <= 40; ++n) {
        double la = s.log_coefficient(n);
        for (int j = 1; j <= 30; ++j) {
            CAPTURE(n);
            CAPTURE(j);
            CHECK(la <= seq.log_weight(j) - (j + 1.0) * n * kLn2 + 1e-9);
        }
        // equality at the attaining index (tau is a min over j)
        long long nu = s.coefficient_nu(n);
        if (nu <= 30) {
            double rhs = seq.log_weight(nu) - (nu + 1.0) * n * kLn2;
            CHECK(la == doctest::Approx(rhs).epsilon(0).scale(1).epsilon(1e-9));
        }
    }
}

TEST_CASE("certified evaluation against frozen references") {
    auto s = k1_series();
    for (const auto& e : kEvalK1) {
        CAPTURE(e.x);
        CAPTURE(e.j);
        // pick eps well above the rounding floor for this order
        double eps = std::exp(s.log_derivative_sup(e.j) - 25.0);
        auto cv = s.evaluate(e.x, e.j, eps);
        CHECK(cv.error <= eps);
        CHECK(std::fabs(cv.value - e.value) <= cv.error);  // certificate honesty
        CHECK(cv.value == doctest::Approx(e.value).epsilon(1e-12));
    }
}

TEST_CASE("evaluation is deterministic and backend-independent") {
    auto s = k1_series();
    auto v1 = s.evaluate(0.3, 2, 1e-9);
    auto v2 = s.evaluate(0.3, 2, 1e-9);
    CHECK(std::bit_cast<std::uint64_t>(v1.value) == std::bit_cast<std::uint64_t>(v2.value));
    if (lacuna::kernels::detail::avx2_available()) {
        auto prev = lacuna::kernels::active_backend();
        lacuna::kernels::set_backend(lacuna::kernels::Backend::scalar);
        auto vs = s.evaluate(0.3, 2, 1e-9);
        lacuna::kernels::set_backend(lacuna::kernels::Backend::avx2);
        auto va = s.evaluate(0.3, 2, 1e-9);
        lacuna::kernels::set_backend(prev);
        CHECK(std::bit_cast<std::uint64_t>(vs.value) == std::bit_cast<std::uint64_t>(va.value));
    }
}

TEST_CASE("certification tightens consistently (eps vs eps/100)") {
    auto s = k1_series();
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> xd(-10.0, 10.0);
    std::uniform_int_distribution<int> jd(0, 8);
    for (int it = 0; it < 200; ++it) {
        double x = xd(rng);
        int j = jd(rng);
        double eps = std::exp(s.log_derivative_sup(j) - 25.0);
        auto a = s.evaluate(x, j, eps);
        auto b = s.evaluate(x, j, eps / 100.0);
        CAPTURE(x);
        CAPTURE(j);
        CHECK(std::fabs(a.value - b.value) <= eps);
        CHECK(std::fabs(a.value - b.value) <= a.error + b.error);
    }
}

TEST_CASE("tail bound brackets the actual remainder") {
    auto s = k1_series();
    // true remainder after N for j=0 is essentially a_{N+1}
    for (int N : {5, 8, 12}) {
        double tail = s.tail_bound(N, 0);
        double next = std::exp(s.log_coefficient(N + 1));
        CAPTURE(N);
        CHECK(tail >= next);          // sound
        CHECK(tail <= 8.0 * next);    // and not absurdly loose
    }
    // monotone in N, grows with j
    CHECK(s.tail_bound(10, 0) > s.tail_bound(11, 0));
    CHECK(s.tail_bound(10, 3) > s.tail_bound(10, 0));
}

TEST_CASE("partial sums agree with finite differences") {
    auto s = k1_series();
    const int N = 6;
    const double h = 1e-6;
    for (double x : {0.2, 1.1, 4.0}) {
        double fd = (s.partial_sum(x + h, 0, N) - s.partial_sum(x - h, 0, N)) / (2 * h);
        double an = s.partial_sum(x, 1, N);
        CAPTURE(x);
        CHECK(fd == doctest::Approx(an).epsilon(0).scale(std::max(1.0, std::fabs(an))).epsilon(1e-8));
    }
}

TEST_CASE("input validation and certification failures") {
    auto s = k1_series();
    CHECK_THROWS_AS(s.evaluate(0.5, -1, 1e-6), ConfigError);
    CHECK_THROWS_AS(s.evaluate(0.5, 61, 1e-6), ConfigError);
    CHECK_THROWS_AS(s.evaluate(0.5, 0, 0.0), ConfigError);
    CHECK_THROWS_AS(s.evaluate(std::numeric_limits<double>::quiet_NaN(), 0, 1e-6), NumericError);
    // far below the rounding floor: evaluator must refuse, not lie
    CHECK_THROWS_AS(s.evaluate(0.5, 8, 1e-30), NumericError);
    // two-entry table cannot certify order 3 tails
    auto tiny = LacunarySeries(WeightSequence::custom({0.0, 2.0}, 1));
    CHECK_THROWS_AS(tiny.evaluate(0.5, 3, 1e-3), NumericError);
    CHECK_THROWS_AS(LacunarySeries(WeightSequence::iterated_log_family(1), 0), ConfigError);
    // zero scale: exact zero with zero error
    auto z = LacunarySeries(WeightSequence::iterated_log_family(1), 1, 0.0);
    auto cv = z.evaluate(1.0, 4, 1e-12);
    CHECK(cv.value == 0.0);
    CHECK(cv.error == 0.0);
}

TEST_CASE("grid sup scan") {
    auto s = k1_series();
    double eps0 = std::exp(s.log_derivative_sup(0) - 25.0);
    auto scan = sup_derivative_scan(s, 0, 1024, eps0);
    CHECK(scan.grid_size == 1024);
    // 0 is on the grid, so the sup estimate dominates f(0) up to certificates
    CHECK(scan.sup_value >= 0.3275835391646226461066 - 2 * eps0);
    CHECK(scan.point_error <= eps0);
    // derivative bound |f^(j)| <= M_j, sampled
    for (int j : {1, 2, 3, 8}) {
        double eps = std::exp(s.log_derivative_sup(j) - 25.0);
        auto sc = sup_derivative_scan(s, j, 512, eps);
        CAPTURE(j);
        CHECK(sc.sup_value <= std::exp(s.sequence().log_weight(j)) + eps);
        CHECK(sc.sup_value > 0.0);
    }
    CHECK_THROWS_AS(sup_derivative_scan(s, 0, 0, 1e-6), ConfigError);
}

TEST_CASE("derivative sup bound dominates sampled values") {
    auto s = k1_series();
    for (const auto& e : kEvalK1) {
        double bound = std::exp(s.log_derivative_sup(e.j));
        CHECK(std::fabs(e.value) <= bound);
    }
}

TEST_CASE("fourier extraction round trip") {
    auto sq = square_series();
    for (int n = 1; n <= 6; ++n) {
        for (int j : {0, 2}) {
            auto r = lacuna::fourier_extract(sq, 1LL << n, j, 0);
            double want = std::exp(sq.log_coefficient(n));
            CAPTURE(n);
            CAPTURE(j);
            CHECK(r.estimate == doctest::Approx(want).epsilon(1e-8));
            CHECK(std::fabs(r.estimate - want) <= r.error + 1e-9 * want);
            CHECK((r.nodes & (r.nodes - 1)) == 0);  // power of two
        }
    }
    SUBCASE("scale is part of the recovered coefficient") {
        auto sc = square_series(2.5);
        auto r = lacuna::fourier_extract(sc, 4, 0, 0);
        CHECK(r.estimate == doctest::Approx(2.5 * std::exp(sc.log_coefficient(2))).epsilon(1e-9));
    }
    SUBCASE("off-frequency content is flat zero") {
        for (long long freq : {3LL, 5LL, 6LL, 12LL, 17LL, 33LL}) {
            auto r = lacuna::fourier_extract(sq, freq, 0, 0);
            CAPTURE(freq);
            CHECK(std::fabs(r.estimate) <= 1e-10);
        }
    }
    SUBCASE("k=1 series, low n") {
        auto s = k1_series();
        for (int n = 1; n <= 5; ++n) {
            auto r = lacuna::fourier_extract(s, 1LL << n, 0, 0);
            double want = std::exp(s.log_coefficient(n));
            CHECK(r.estimate == doctest::Approx(want).epsilon(1e-7));
        }
    }
    CHECK_THROWS_AS(lacuna::fourier_extract(sq, 0, 0, 0), ConfigError);
    CHECK_THROWS_AS(lacuna::fourier_extract(sq, 4, 11, 0), ConfigError);
}

TEST_CASE("class fingerprint stays inside the weight envelope") {
    auto s = k1_series();
    auto rows = lacuna::class_fingerprint(s, {1, 2, 3, 6}, 2048);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CAPTURE(row.j);
        CHECK(row.ratio <= 1.0 + 1e-9);
        CHECK(row.ratio > 1e-4);
        CHECK(row.sup_root > 0.0);
        CHECK(row.weight_root >= row.sup_root * 0.99);
    }
    CHECK_THROWS_AS(lacuna::class_fingerprint(s, {}, 64), ConfigError);
    CHECK_THROWS_AS(lacuna::class_fingerprint(s, {0}, 64), ConfigError);
}
