#include "lacuna/weights.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"

using lacuna::ConfigError;
using lacuna::WeightSequence;

// Reference values computed independently at 50-digit precision and frozen.
namespace ref {
constexpr double c1 = 1.718281828459045235360287;
constexpr double c2 = 14.15426224147926418976043;
constexpr double c3 = 3814278.104760220592209221;
constexpr double logM_k1_j2 = 1.931322122125057423934492;
constexpr double logM_k1_j100 = 613.6042493293952047048463;
constexpr double logM_k2_j5 = 8.444298253339888936495516;
constexpr double logM_k3_j7 = 13.62137131069224128870502;
constexpr double S100_k1 = 2.791489268903430518774;
constexpr double S1000_k1 = 3.195392536871145811969;
constexpr double sep100 = 2.97148621255027466643;
constexpr double sep500 = 3.395266712534288809078;
}  // namespace ref

TEST_CASE("iterated log/exp and shift constants") {
    CHECK(lacuna::iterated_log(1, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lacuna::iterated_log(2, std::exp(std::exp(1.0))) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lacuna::iterated_exp(2, 0.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(lacuna::ilog_shift(1) == doctest::Approx(ref::c1).epsilon(1e-15));
    CHECK(lacuna::ilog_shift(2) == doctest::Approx(ref::c2).epsilon(1e-15));
    CHECK(lacuna::ilog_shift(3) == doctest::Approx(ref::c3).epsilon(1e-14));
    CHECK_THROWS_AS(lacuna::iterated_log(0, 2.0), ConfigError);
    CHECK_THROWS_AS(lacuna::iterated_log(4, 2.0), ConfigError);
    CHECK_THROWS_AS(lacuna::iterated_log(2, 1.0), ConfigError);  // log log 1 = log 0
}

TEST_CASE("family log weights against frozen references") {
    auto k1 = WeightSequence::iterated_log_family(1);
    auto k2 = WeightSequence::iterated_log_family(2);
    auto k3 = WeightSequence::iterated_log_family(3);
    // M_1 = 1 for every order: the shift is chosen to make the inner factor 1.
    CHECK(std::fabs(k1.log_weight(1)) < 1e-14);
    CHECK(std::fabs(k2.log_weight(1)) < 1e-13);
    CHECK(std::fabs(k3.log_weight(1)) < 1e-13);
    CHECK(k1.log_weight(2) == doctest::Approx(ref::logM_k1_j2).epsilon(1e-14));
    CHECK(k1.log_weight(100) == doctest::Approx(ref::logM_k1_j100).epsilon(1e-14));
    CHECK(k2.log_weight(5) == doctest::Approx(ref::logM_k2_j5).epsilon(1e-14));
    CHECK(k3.log_weight(7) == doctest::Approx(ref::logM_k3_j7).epsilon(1e-13));
    CHECK_THROWS_AS(k1.log_weight(0), ConfigError);
    CHECK_THROWS_AS(k1.log_weight(-3), ConfigError);

    SUBCASE("bulk accessor agrees with scalar path") {
        auto block = k2.log_weights(1, 600);
        for (long long j : {1LL, 5LL, 17LL, 599LL, 600LL})
            CHECK(block[static_cast<size_t>(j - 1)] == k2.log_weight(j));
    }
    SUBCASE("cache boundary: direct computation above the cap is consistent") {
        long long big = (1LL << 20) + 7;
        double direct = k1.log_weight(big);
        CHECK(std::isfinite(direct));
        CHECK(direct > 0);
        CHECK(k1.log_weight(big) == direct);
    }
}

TEST_CASE("custom tables") {
    auto seq = WeightSequence::custom({0.0, 1.0, 4.0, 9.0}, 1);
    CHECK(seq.is_custom());
    CHECK(seq.j_min() == 1);
    CHECK(seq.j_max() == 4);
    CHECK(seq.log_weight(3) == 4.0);
    CHECK_THROWS_AS(seq.log_weight(5), ConfigError);
    CHECK_THROWS_AS(WeightSequence::custom({}), ConfigError);
    CHECK_THROWS_AS(WeightSequence::custom({0.0, std::nan("")}), ConfigError);
}

TEST_CASE("admissibility checks pass for the family") {
    for (int k = 1; k <= 3; ++k) {
        CAPTURE(k);
        auto seq = WeightSequence::iterated_log_family(k);
        auto rep = lacuna::verify_sequence(seq, 1, 500);
        CHECK(rep.increasing.pass);
        CHECK(rep.log_convex.pass);
        CHECK(rep.root_growth.pass);  // equality at j=1 counts as a pass
        CHECK(rep.root_monotone.pass);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("admissibility checks reject a doctored table") {
    // log M = (0, 2, 2.5): midpoint convexity at j=2 needs 0 + 2.5 >= 4.
    auto bad = WeightSequence::custom({0.0, 2.0, 2.5}, 1);
    auto rep = lacuna::verify_sequence(bad, 1, 3);
    CHECK_FALSE(rep.log_convex.pass);
    CHECK(rep.log_convex.first_violation == 2);
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.increasing.pass);

    auto decreasing = WeightSequence::custom({0.0, 5.0, 4.5}, 1);
    auto rep2 = lacuna::verify_sequence(decreasing, 1, 3);
    CHECK_FALSE(rep2.increasing.pass);
    CHECK(rep2.increasing.first_violation == 3);
}

TEST_CASE("divergence profile partial sums") {
    auto k1 = WeightSequence::iterated_log_family(1);
    auto rows = lacuna::divergence_profile(k1, 1, {10, 100, 1000});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].partial_sum < rows[1].partial_sum);
    CHECK(rows[1].partial_sum < rows[2].partial_sum);
    CHECK(rows[1].partial_sum == doctest::Approx(ref::S100_k1).epsilon(1e-13));
    CHECK(rows[2].partial_sum == doctest::Approx(ref::S1000_k1).epsilon(1e-13));
    CHECK_THROWS_AS(lacuna::divergence_profile(k1, 1, {}), ConfigError);
    CHECK_THROWS_AS(lacuna::divergence_profile(k1, 1, {10, 10}), ConfigError);
}

TEST_CASE("separation ratio between nested families") {
    auto k1 = WeightSequence::iterated_log_family(1);
    auto k2 = WeightSequence::iterated_log_family(2);
    auto rows = lacuna::separation_ratio(k1, k2, {10, 100, 500});
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].root_ratio == doctest::Approx(ref::sep100).epsilon(1e-13));
    CHECK(rows[2].root_ratio == doctest::Approx(ref::sep500).epsilon(1e-13));
    // the ratio grows like log j / log log j: monotone over the grid
    CHECK(rows[0].root_ratio < rows[1].root_ratio);
    CHECK(rows[1].root_ratio < rows[2].root_ratio);
}
