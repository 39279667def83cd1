#include <gtest/gtest.h>

#include <mpfr.h>

#include <random>

#include "eht/circle.hpp"

using namespace eht;

namespace {

// Independent oracle: f(T^n x) for golden alpha = (sqrt5 - 1)/2 evaluated with
// 512-bit MPFR arithmetic, no continued fractions involved.
int golden_sign_oracle(long n, const Rational& x, const IntervalUnion& U) {
    mpfr_t a, t;
    mpfr_inits2(512, a, t, (mpfr_ptr)nullptr);
    mpfr_sqrt_ui(a, 5, MPFR_RNDN);
    mpfr_sub_ui(a, a, 1, MPFR_RNDN);
    mpfr_div_2ui(a, a, 1, MPFR_RNDN);
    mpfr_mul_si(t, a, n, MPFR_RNDN);
    mpfr_add_q(t, t, x.get_mpq_t(), MPFR_RNDN);
    mpfr_frac(t, t, MPFR_RNDN);
    Rational r;
    mpfr_get_q(r.get_mpq_t(), t);
    mpfr_clears(a, t, (mpfr_ptr)nullptr);
    if (r < 0) r += 1;
    return U.contains(r) ? 1 : -1;
}

IntervalUnion random_union(std::mt19937_64& rng, std::size_t B) {
    // B arcs of total length 1/2: cut points on a grid of mesh 1/den.
    const long den = 997;
    std::uniform_int_distribution<long> pos(0, den - 1);
    while (true) {
        std::vector<long> cuts;
        while (cuts.size() < 2 * B) {
            long c = pos(rng);
            if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
        }
        std::sort(cuts.begin(), cuts.end());
        // Arcs [c0,c1), [c2,c3), ...; rescale lengths to sum to 1/2 by picking
        // the gaps, then shift everything by a random rotation.
        std::vector<Rational> lens, gaps;
        Rational total_len = 0, total_gap = 0;
        for (std::size_t i = 0; i < B; ++i) {
            Rational l(cuts[2 * i + 1] - cuts[2 * i], den);
            Rational g(((i + 1 < B) ? cuts[2 * i + 2] : cuts[0] + den) - cuts[2 * i + 1], den);
            lens.push_back(l);
            gaps.push_back(g);
            total_len += l;
            total_gap += g;
        }
        std::vector<Arc> arcs;
        Rational at = Rational(pos(rng), den);
        for (std::size_t i = 0; i < B; ++i) {
            Rational l = lens[i] / total_len / 2;
            Rational g = gaps[i] / total_gap / 2;
            arcs.push_back({frac(at), frac(at + l)});
            at += l + g;
        }
        try {
            return IntervalUnion(arcs);
        } catch (const std::invalid_argument&) {
        }
    }
}

}  // namespace

TEST(DistanceToZero, Examples) {
    EXPECT_EQ(distance_to_zero(Rational(3, 4)), Rational(1, 4));
    EXPECT_EQ(distance_to_zero(Rational(0)), Rational(0));
    EXPECT_EQ(distance_to_zero(Rational(13, 8)), Rational(3, 8));
    EXPECT_EQ(distance_to_zero(Rational(-1, 8)), Rational(1, 8));
}

TEST(IntervalUnion, Validation) {
    EXPECT_NO_THROW(IntervalUnion::half_circle());
    EXPECT_THROW(IntervalUnion({{Rational(0), Rational(1, 3)}}), std::invalid_argument);
    EXPECT_THROW(IntervalUnion({{Rational(0), Rational(1, 2)}, {Rational(1, 4), Rational(1, 2)}}),
                 std::invalid_argument);
    // Wrapping arc [3/4, 1/4) has measure 1/2 and counts as one interval.
    IntervalUnion wrap({{Rational(3, 4), Rational(1, 4)}});
    EXPECT_EQ(wrap.count(), 1u);
    EXPECT_EQ(wrap.pieces().size(), 2u);
    EXPECT_TRUE(wrap.contains(Rational(0)));
    EXPECT_TRUE(wrap.contains(Rational(9, 10)));
    EXPECT_FALSE(wrap.contains(Rational(1, 4)));
    EXPECT_TRUE(wrap.contains(Rational(3, 4)));
}

TEST(EvalSign, Examples) {
    auto half = IntervalUnion::half_circle();
    EXPECT_EQ(eval_sign(half, {Rational(1, 10), Rational(2, 10)}), Sign::Plus);
    EXPECT_EQ(eval_sign(half, {Rational(49, 100), Rational(51, 100)}), Sign::Undetermined);
    IntervalUnion two({{Rational(0), Rational(1, 4)}, {Rational(1, 2), Rational(3, 4)}});
    EXPECT_EQ(eval_sign(two, {Rational(30, 100), Rational(31, 100)}), Sign::Minus);
    // Straddling 0 = 1 is a crossing too.
    EXPECT_EQ(eval_sign(half, {Rational(99, 100), Rational(101, 100)}), Sign::Undetermined);
}

TEST(OrbitPoint, Examples) {
    auto golden = Rotation::irrational(presets::golden(40));
    auto e0 = orbit_point(golden, UnitPoint(Rational(1, 3)), 0, 3);
    EXPECT_EQ(e0.lo, Rational(1, 3));
    EXPECT_EQ(e0.hi, Rational(1, 3));

    auto e = orbit_point(golden, UnitPoint(), 1, 6);
    EXPECT_LE(e.width(), Rational(2, 13 * 21));
    EXPECT_TRUE(e.lo <= Rational(987, 1597) && Rational(987, 1597) <= e.hi);

    auto r = Rotation::rational(Rational(2, 5));
    auto p = orbit_point(r, UnitPoint(), 7, 0);
    EXPECT_EQ(p.lo, Rational(4, 5));
    EXPECT_EQ(p.hi, Rational(4, 5));
}

TEST(SignAt, GoldenExamples) {
    auto golden = Rotation::irrational(presets::golden(40));
    auto half = IntervalUnion::half_circle();
    EXPECT_EQ(sign_at(golden, UnitPoint(), 1, half), -1);
    EXPECT_EQ(sign_at(golden, UnitPoint(), 2, half), 1);
    EXPECT_EQ(sign_at(golden, UnitPoint(), 0, half), 1);
}

TEST(SignAt, ExhaustionReported) {
    auto short_alpha = Rotation::irrational(CFNumber{1, 1, 1});
    EXPECT_THROW(sign_at(short_alpha, UnitPoint(), 50, IntervalUnion::half_circle()), DigitExhaustion);
}

TEST(SignAt, SoundUnderRefinement) {
    auto golden = Rotation::irrational(presets::golden(60));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto U = random_union(rng, 1 + trial % 3);
        for (long n = 1; n <= 300; ++n) {
            for (std::size_t k = 8; k <= 20; ++k) {
                auto s = eval_sign(U, orbit_point(golden, UnitPoint(), n, k));
                if (s == Sign::Undetermined) continue;
                EXPECT_EQ(eval_sign(U, orbit_point(golden, UnitPoint(), n, k + 5)), s);
            }
        }
    }
}

TEST(OrbitSigns, MatchIndependentOracle) {
    auto golden = Rotation::irrational(presets::golden(10));
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        auto U = random_union(rng, 1 + trial % 3);
        Rational x = trial % 2 ? Rational(1, 7) : Rational(3, 8);
        auto seq = orbit_signs(golden, UnitPoint(x), U, 1, 3000);
        for (long n = 1; n <= 3000; ++n) ASSERT_EQ(seq.at(n), golden_sign_oracle(n, x, U)) << n;
        // Per-point refinement agrees with the bulk scan.
        for (long n = 1; n <= 3000; n += 97) EXPECT_EQ(sign_at(golden, UnitPoint(x), n, U), seq.at(n));
    }
}

TEST(OrbitSigns, EndpointHitFallsBackToRefinement) {
    // x = 1/2 - 3/5 + 1 so that the approximant at small depth can land on 1/2.
    auto golden = Rotation::irrational(presets::golden(40));
    auto half = IntervalUnion::half_circle();
    UnitPoint x(Rational(9, 10));
    auto seq = orbit_signs(golden, x, half, 1, 200);
    for (long n = 1; n <= 200; ++n) EXPECT_EQ(seq.at(n), golden_sign_oracle(n, x.value(), half)) << n;
}

TEST(OrbitSigns, RationalModeExact) {
    auto r = Rotation::rational(Rational(2, 5));
    auto half = IntervalUnion::half_circle();
    auto seq = orbit_signs(r, UnitPoint(), half, 0, 9);
    // Points 0, 2/5, 4/5, 1/5, 3/5, 0, ...
    std::vector<int> expect{1, 1, -1, 1, -1, 1, 1, -1, 1, -1};
    for (int n = 0; n <= 9; ++n) EXPECT_EQ(seq.at(n), expect[static_cast<std::size_t>(n)]);
}

TEST(SegmentSum, GoldenFirstFour) {
    auto golden = Rotation::irrational(presets::golden(40));
    OrbitSegment seg(golden, UnitPoint(), 1, 4);
    EXPECT_EQ(segment_sum(seg, IntervalUnion::half_circle()), 0);
}

TEST(SegmentSum, ParityAndOddLengthNonzero) {
    auto golden = Rotation::irrational(presets::golden(40));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto U = random_union(rng, 1 + trial % 3);
        auto seq = orbit_signs(golden, UnitPoint(Rational(trial, 31)), U, 1, 2000);
        std::uniform_int_distribution<long> pick(1, 2000);
        for (int i = 0; i < 200; ++i) {
            long a = pick(rng), b = pick(rng);
            if (a > b) std::swap(a, b);
            long s = 0;
            for (long n = a; n <= b; ++n) s += seq.at(n);
            const long len = b - a + 1;
            EXPECT_LE(std::labs(s), len);
            EXPECT_EQ(((s - len) % 2 + 2) % 2, 0);
            if (len % 2 == 1) { EXPECT_NE(s, 0); }
        }
    }
}

TEST(SegmentSum, DenjoyKoksmaWindows) {
    auto golden = presets::golden(40);
    auto rot = Rotation::irrational(golden);
    std::mt19937_64 rng(21);
    for (std::size_t B = 1; B <= 3; ++B) {
        auto U = random_union(rng, B);
        auto seq = orbit_signs(rot, UnitPoint(Rational(1, 7)), U, 1, 20000);
        std::vector<long> prefix(seq.size() + 1, 0);
        for (std::size_t i = 0; i < seq.size(); ++i) prefix[i + 1] = prefix[i] + seq.values[i];
        for (std::size_t k = 1; k <= 12; ++k) {
            const long qk = golden.q(k).get_si();
            for (std::size_t start = 0; start + static_cast<std::size_t>(qk) <= seq.size(); ++start)
                ASSERT_LT(std::labs(prefix[start + static_cast<std::size_t>(qk)] - prefix[start]), 4 * static_cast<long>(B));
        }
    }
}
