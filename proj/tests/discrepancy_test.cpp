#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eht/discrepancy.hpp"

using namespace eht;

namespace {

Rotation golden() { return Rotation::irrational(presets::golden(80)); }

}  // namespace

TEST(Discrepancy, SinglePoint) {
    // The sup is approached by [1/2, 1/2 + eps): one point, length -> 0.
    auto s = PointSample::from_rationals({Rational(1, 2)});
    auto r = discrepancy(s);
    EXPECT_EQ(r.D, 1);
    EXPECT_EQ(discrepancy_brute_force(s), 1);
    EXPECT_TRUE(r.witness_closed);
    EXPECT_EQ(r.witness_lo, Rational(1, 2));
    EXPECT_EQ(r.witness_hi, Rational(1, 2));
}

TEST(Discrepancy, EquallySpaced) {
    for (long N : {1L, 2L, 5L, 17L, 64L}) {
        std::vector<Rational> pts;
        for (long k = 0; k < N; ++k) pts.push_back(Rational(k, N));
        auto s = PointSample::from_rationals(pts);
        EXPECT_EQ(discrepancy(s).D, Rational(1, N));
        EXPECT_EQ(discrepancy_brute_force(s), Rational(1, N));
    }
}

TEST(Discrepancy, MatchesBruteForceOnRandomKronecker) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const long q = 2 + static_cast<long>(rng() % 300);
        const long p = 1 + static_cast<long>(rng() % static_cast<unsigned long>(q - 1));
        const long v = 1 + static_cast<long>(rng() % 40);
        const Rational x(static_cast<long>(rng() % static_cast<unsigned long>(v)), v);
        const auto N = 1 + static_cast<std::int64_t>(rng() % 200);
        auto s = kronecker_sample(Rational(p, q), x, N);
        auto r = discrepancy(s);
        EXPECT_EQ(r.D, discrepancy_brute_force(s)) << p << "/" << q << " x=" << x << " N=" << N;
        EXPECT_EQ(witness_deviation(s, r.witness_lo, r.witness_hi, r.witness_closed), r.D);
        EXPECT_GE(r.D, Rational(1, 2 * N));
        EXPECT_LE(r.D, 1);
    }
}

TEST(Discrepancy, RepeatedPoints) {
    // alpha = 1/3: the orbit revisits three points.
    auto s = kronecker_sample(Rational(1, 3), Rational(0), 9);
    auto r = discrepancy(s);
    EXPECT_EQ(r.D, discrepancy_brute_force(s));
    EXPECT_EQ(witness_deviation(s, r.witness_lo, r.witness_hi, r.witness_closed), r.D);
}

TEST(Discrepancy, GoldenEnclosure) {
    auto alpha = golden();
    for (std::int64_t N : {10, 100, 1000}) {
        auto r = kronecker_discrepancy(alpha, UnitPoint(), N);
        EXPECT_FALSE(r.exact);
        EXPECT_LT(r.hi - r.lo, Rational(BigInt(1), BigInt(1) << 60));
        // A much finer convergent gives the same value up to both error terms.
        const auto& cf = alpha.cf();
        const std::size_t K = 60;
        auto fine = discrepancy(kronecker_sample(cf.convergent(K), Rational(0), N));
        const Rational slack = Rational(BigInt(2 * N), cf.q(K) * cf.q(K + 1));
        EXPECT_GE(fine.D, r.lo - slack);
        EXPECT_LE(fine.D, r.hi + slack);
        EXPECT_LE(to_double(r.hi) * static_cast<double>(N) / std::log(static_cast<double>(N)), 5.0);
    }
}

TEST(Discrepancy, GoldenShiftedStart) {
    auto r = kronecker_discrepancy(golden(), UnitPoint(Rational(3, 8)), 300);
    auto fine = discrepancy(kronecker_sample(golden().cf().convergent(50), Rational(3, 8), 300));
    EXPECT_LE(abs(fine.D - r.D), r.hi - r.lo);
}

TEST(SnGrowth, GoldenCheckpoints) {
    auto rows = sn_growth(golden(), UnitPoint(), IntervalUnion::half_circle(), {1, 10, 100, 1000, 10000});
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0].abs_s, 1);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.ok) << r.N;
        EXPECT_LE(static_cast<double>(r.abs_s), 3 * std::log(static_cast<double>(r.N)) + 2);
    }
}

TEST(SnGrowth, RationalDrift) {
    // alpha = 2/5, x = 0: period sum +1.
    auto rows = sn_growth(Rotation::rational(Rational(2, 5)), UnitPoint(), IntervalUnion::half_circle(), {5, 50, 500});
    for (const auto& r : rows) {
        EXPECT_EQ(r.abs_s, r.N / 5);
        EXPECT_TRUE(r.ok);
        EXPECT_TRUE(r.discrepancy.exact);
        EXPECT_GE(r.discrepancy.D, Rational(1, 5));
    }
    EXPECT_THROW(sn_growth(golden(), UnitPoint(), IntervalUnion::half_circle(), {10, 10}), std::invalid_argument);
}

TEST(SnGrowth, MultiIntervalUnion) {
    const IntervalUnion U({{Rational(7, 8), Rational(1, 8)}, {Rational(1, 3), Rational(7, 12)}});
    for (const auto& r : sn_growth(golden(), UnitPoint(Rational(1, 7)), U, {7, 70, 700, 7000})) EXPECT_TRUE(r.ok);
}

TEST(ViaParts, IdentityExact) {
    auto e = eht_via_parts(golden(), UnitPoint(), IntervalUnion::half_circle(), 50);
    ASSERT_TRUE(e.exact);
    EXPECT_TRUE(e.identity_holds);
    auto t = weighted_partial_sums(golden(), UnitPoint(), IntervalUnion::half_circle(), WeightScheme::harmonic(), 50);
    EXPECT_EQ(*e.exact, t.S(50));
}

TEST(ViaParts, TwoTerms) {
    auto e = eht_via_parts(golden(), UnitPoint(), IntervalUnion::half_circle(), 2);
    auto t = weighted_partial_sums(golden(), UnitPoint(), IntervalUnion::half_circle(), WeightScheme::harmonic(), 2);
    EXPECT_EQ(*e.exact, Rational(t.s(2), 2) + Rational(t.s(1), 2));
    EXPECT_THROW(eht_via_parts(golden(), UnitPoint(), IntervalUnion::half_circle(), 1), std::invalid_argument);
}

TEST(ViaParts, CertifiedIdentityAndTail) {
    auto a = eht_via_parts(golden(), UnitPoint(), IntervalUnion::half_circle(), 4000, SumMode::Certified);
    EXPECT_FALSE(a.exact);
    EXPECT_TRUE(a.identity_holds);
    auto b = eht_via_parts(golden(), UnitPoint(), IntervalUnion::half_circle(), 8000, SumMode::Certified);
    EXPECT_LT(a.exponent, 1.0);
    EXPECT_GT(a.constant, 0.0);
    EXPECT_LT(std::abs(a.value.midpoint() - b.value.midpoint()), a.tail_bound);
}

TEST(ViaParts, DriftingRotationHasNoTail) {
    // s_n grows linearly, so no envelope with exponent below 1 exists.
    auto e = eht_via_parts(Rotation::rational(Rational(2, 5)), UnitPoint(), IntervalUnion::half_circle(), 500);
    EXPECT_TRUE(e.identity_holds);
    EXPECT_TRUE(std::isinf(e.tail_bound));
}
