#include <gtest/gtest.h>

#include <map>
#include <random>

#include "eht/eht.hpp"

using namespace eht;

namespace {

std::vector<std::int8_t> random_signs(std::mt19937_64& rng, std::size_t n) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::int8_t> out(n);
    for (auto& c : out) c = coin(rng) ? 1 : -1;
    return out;
}

// Least N with sum_{m=1}^{N} 1/(m+kappa+1) > T, by plain exact summation.
long direct_n2(long kappa, const Rational& T) {
    Rational sum = 0;
    for (long N = 1;; ++N) {
        sum += Rational(1, N + kappa + 1);
        if (sum > T) return N;
    }
}

}  // namespace

TEST(WeightedPartialSums, GoldenFirstFour) {
    auto golden = Rotation::irrational(presets::golden(40));
    auto t = weighted_partial_sums(golden, UnitPoint(), IntervalUnion::half_circle(), WeightScheme::harmonic(), 4);
    EXPECT_EQ(t.S(4), Rational(-7, 12));
    EXPECT_EQ(t.s(4), 0);
    EXPECT_EQ(t.c(1), -1);
}

TEST(WeightedPartialSums, SingleTerm) {
    auto golden = Rotation::irrational(presets::golden(40));
    auto t = weighted_partial_sums(golden, UnitPoint(Rational(1, 5)), IntervalUnion::half_circle(),
                                   WeightScheme::harmonic(), 1);
    EXPECT_EQ(abs(t.S(1)), 1);
}

TEST(WeightedPartialSums, RationalPeriodDrift) {
    // alpha = 2/5: points 2/5, 4/5, 1/5, 3/5, 0 give +,-,+,-,+ with period sum +1.
    auto r = Rotation::rational(Rational(2, 5));
    auto t = weighted_partial_sums(r, UnitPoint(), IntervalUnion::half_circle(), WeightScheme::harmonic(), 200);
    for (long k = 1; k <= 40; ++k) EXPECT_EQ(t.s(5 * k), k);
    for (long k = 2; k <= 40; ++k) EXPECT_GT(t.S(5 * k), t.S(5 * (k - 1)));
}

TEST(WeightedPartialSums, DifferencesAndCounts) {
    std::mt19937_64 rng(1);
    auto signs = random_signs(rng, 300);
    auto t = trace_from_signs(signs, WeightScheme::harmonic(3));
    for (std::int64_t n = 2; n <= 300; ++n) {
        EXPECT_EQ(t.S(n) - t.S(n - 1), Rational(t.c(n), n + 3));
        EXPECT_LE(std::llabs(t.s(n)), n);
    }
}

TEST(WeightedPartialSums, CertifiedEnclosesExact) {
    std::mt19937_64 rng(2);
    auto signs = random_signs(rng, 2000);
    auto exact = trace_from_signs(signs, WeightScheme::harmonic(), SumMode::Exact);
    auto cert = trace_from_signs(signs, WeightScheme::harmonic(), SumMode::Certified);
    ASSERT_TRUE(cert.certified);
    for (std::int64_t n = 1; n <= 2000; n += 37) EXPECT_TRUE(cert.S_enclosure(n).contains(exact.S(n))) << n;
}

TEST(WeightedPartialSums, CustomWeightsMustBeMonotone) {
    auto bad = WeightScheme::custom([](std::int64_t n) { return Rational(n, 4); }, "bad");
    EXPECT_THROW(trace_from_signs({1, 1, 1}, bad), std::invalid_argument);
}

TEST(SummationByParts, SmallIdentities) {
    auto one = summation_by_parts(trace_from_signs({1}, WeightScheme::harmonic()), 0);
    EXPECT_EQ(one.boundary, Rational(1, 2));
    EXPECT_EQ(one.series, Rational(1, 2));
    EXPECT_EQ(one.total(), 1);

    auto two = summation_by_parts(trace_from_signs({1, -1}, WeightScheme::harmonic()), 0);
    EXPECT_EQ(two.total(), Rational(1, 2));
}

TEST(SummationByParts, RandomIdentityKappaSeven) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        auto signs = random_signs(rng, 100);
        auto t = trace_from_signs(signs, WeightScheme::harmonic(7));
        Rational direct = 0;
        for (long m = 1; m <= 100; ++m) direct += Rational(signs[static_cast<std::size_t>(m - 1)], m + 7);
        EXPECT_EQ(summation_by_parts(t, 7).total(), direct);
    }
}

TEST(SummationByParts, WeightMismatch) {
    auto t = trace_from_signs({1, -1, 1}, WeightScheme::harmonic(2));
    EXPECT_THROW(summation_by_parts(t, 0), std::invalid_argument);
}

TEST(ComputeNStar, WorkedExample) {
    auto cert = compute_nstar(1, 0, 1, 1);
    EXPECT_EQ(cert.E, Rational(1, 2));
    EXPECT_TRUE(cert.E_exact);
    EXPECT_EQ(cert.threshold, Rational(9, 2));
    EXPECT_TRUE(cert.N2_exact);
    EXPECT_EQ(cert.N2, direct_n2(0, Rational(9, 2)));
    EXPECT_LE(abs(cert.N2 - 137), 1);
    EXPECT_GE(cert.Nstar, cert.N2);
    EXPECT_GE(cert.Nstar, cert.N1);
}

TEST(ComputeNStar, MatchesDirectSummation) {
    for (long kappa = 0; kappa <= 5; ++kappa) {
        for (long N1 = 1; N1 <= 6; ++N1) {
            for (Rational A : {Rational(1, 4), Rational(1), Rational(2)}) {
                auto cert = compute_nstar(2, kappa, N1, A);
                EXPECT_EQ(cert.E, nstar_E_exact(kappa, N1));
                EXPECT_EQ(cert.N2, direct_n2(kappa, cert.threshold));
            }
        }
    }
}

TEST(ComputeNStar, EnclosureOfE) {
    for (long kappa : {0L, 1L, 9L, 300L}) {
        for (long N1 : {1L, 50L, 400L}) {
            EXPECT_TRUE(nstar_E_enclosure(kappa, N1).contains(nstar_E_exact(kappa, N1))) << kappa << " " << N1;
        }
    }
}

TEST(ComputeNStar, MonotoneInAAndL) {
    BigInt prev = 0;
    for (Rational A : {Rational(1, 100), Rational(1, 10), Rational(1, 2), Rational(1), Rational(3)}) {
        auto cert = compute_nstar(1, 1, 2, A);
        EXPECT_GE(cert.Nstar, prev);
        prev = cert.Nstar;
    }
    prev = 0;
    for (Rational L : {Rational(4), Rational(2), Rational(1), Rational(1, 2), Rational(-1, 3)}) {
        auto cert = compute_nstar(L, 1, 2, 1);
        EXPECT_GE(cert.Nstar, prev);
        prev = cert.Nstar;
    }
}

TEST(ComputeNStar, Errors) {
    EXPECT_THROW(compute_nstar(0, 0, 1, 1), std::invalid_argument);
    EXPECT_THROW(compute_nstar(1, 0, 0, 1), std::invalid_argument);
    EXPECT_THROW(compute_nstar(1, 0, 1, 0), std::invalid_argument);
}

TEST(ComputeNStar, CertifiedEForLargeN1) {
    auto cert = compute_nstar(Rational(1, 7), 3, 5000, 3);
    EXPECT_FALSE(cert.E_exact);
    EXPECT_GE(cert.E, nstar_E_exact(3, 5000));
    EXPECT_LT(cert.E - nstar_E_exact(3, 5000), Rational(1, 1000000));
}

TEST(ComputeNStar, AstronomicalN2IsCertifiedUpperBound) {
    // Level-2 parameters of the exact divergent construction with a_2 of order 3e4.
    const BigInt q = 35001;
    auto cert = compute_nstar(Rational(BigInt(1), q), 1, q * q, 3);
    EXPECT_FALSE(cert.N2_exact);
    // N2 >= exp(threshold - ln 2 - 1) at the very least; compare bit sizes only.
    const double log2_n2 = static_cast<double>(mpz_sizeinbase(cert.N2.get_mpz_t(), 2));
    const double expected = cert.threshold.get_d() / std::log(2.0);
    EXPECT_NEAR(log2_n2 / expected, 1.0, 0.01);
    EXPECT_GE(cert.Nstar, cert.N2);
}

TEST(ComputeNStar, SoundAgainstAdversary) {
    // For L = 1 the adversary keeps s_n >= (n+kappa)/3 beyond N1 and otherwise
    // pushes the weighted sum down. Every prefix of length 16 is enumerated; past
    // it the pointwise lowest admissible path is optimal because summation by
    // parts writes the sum with non-negative coefficients on each s_m.
    for (long kappa = 0; kappa <= 2; ++kappa) {
        for (long N1 = 1; N1 <= 4; ++N1) {
            auto cert = compute_nstar(1, kappa, N1, 1);
            const long Nstar = cert.Nstar.get_si();
            auto admissible = [&](long n, long s) { return n <= N1 || 3 * s >= n + kappa; };
            Rational worst;
            bool any = false;
            std::map<long, Rational> continuation;
            const int len = 16;
            for (long mask = 0; mask < (1L << len); ++mask) {
                long s = 0;
                bool ok = true;
                Rational sum = 0;
                for (long n = 1; n <= len && ok; ++n) {
                    const int c = (mask >> (n - 1)) & 1 ? 1 : -1;
                    s += c;
                    ok = admissible(n, s);
                    sum += Rational(c, n + kappa);
                }
                if (!ok) continue;
                auto it = continuation.find(s);
                if (it == continuation.end()) {
                    Rational tail = 0;
                    long t = s;
                    for (long n = len + 1; n <= Nstar; ++n) {
                        const int c = admissible(n, t - 1) ? -1 : 1;
                        t += c;
                        tail += Rational(c, n + kappa);
                    }
                    it = continuation.emplace(s, tail).first;
                }
                sum += it->second;
                if (!any || sum < worst) worst = sum;
                any = true;
            }
            ASSERT_TRUE(any);
            EXPECT_GT(worst, cert.A) << "kappa=" << kappa << " N1=" << N1;
        }
    }
}

TEST(CauchyGapScan, ZeroThresholdSingleTerm) {
    auto golden = Rotation::irrational(presets::golden(40));
    auto rep = cauchy_gap_scan(golden, UnitPoint(), IntervalUnion::half_circle(), WeightScheme::harmonic(), 1, 1, 0);
    ASSERT_EQ(rep.witnesses.size(), 1u);
    EXPECT_EQ(rep.witnesses[0].n1, 1);
    EXPECT_EQ(rep.witnesses[0].n2, 1);
}

TEST(CauchyGapScan, RationalThirdDrifts) {
    auto r = Rotation::rational(Rational(1, 3));
    auto rep = cauchy_gap_scan(r, UnitPoint(), IntervalUnion::half_circle(), WeightScheme::harmonic(), 1, 300,
                               Rational(1, 2));
    EXPECT_GE(rep.witnesses.size(), 1u);
    for (const auto& wit : rep.witnesses) EXPECT_GT(abs(*wit.exact), Rational(1, 2));
}

TEST(CauchyGapScan, CompleteAgainstAllWindows) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        auto signs = random_signs(rng, 40);
        const Rational theta(trial % 5 + 1, 4);
        auto rep = cauchy_gap_scan(signs, 10, WeightScheme::harmonic(), theta, SumMode::Exact);
        Rational best = 0;
        for (std::size_t a = 0; a < signs.size(); ++a) {
            Rational s = 0;
            for (std::size_t b = a; b < signs.size(); ++b) {
                s += Rational(signs[b], static_cast<long>(b) + 10);
                best = std::max(best, Rational(abs(s)));
                (void)b;
            }
        }
        EXPECT_TRUE(rep.spread.contains(best));
        EXPECT_EQ(!rep.witnesses.empty(), best > theta) << trial;
        std::int64_t last = 0;
        for (const auto& wit : rep.witnesses) {
            Rational direct = 0;
            for (auto n = wit.n1; n <= wit.n2; ++n) direct += Rational(signs[static_cast<std::size_t>(n - 10)], n);
            EXPECT_EQ(direct, *wit.exact);
            EXPECT_GT(abs(direct), theta);
            EXPECT_GT(wit.n1, last);
            last = wit.n2;
        }
    }
}

TEST(CauchyGapScan, CertifiedMatchesExact) {
    std::mt19937_64 rng(10);
    auto signs = random_signs(rng, 3000);
    auto a = cauchy_gap_scan(signs, 1, WeightScheme::harmonic(), Rational(1, 3), SumMode::Exact);
    auto b = cauchy_gap_scan(signs, 1, WeightScheme::harmonic(), Rational(1, 3), SumMode::Certified);
    ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
    for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
        EXPECT_EQ(a.witnesses[i].n1, b.witnesses[i].n1);
        EXPECT_EQ(a.witnesses[i].n2, b.witnesses[i].n2);
        EXPECT_TRUE(b.witnesses[i].value.contains(*a.witnesses[i].exact));
    }
}

TEST(WeightCondition, Harmonic) {
    auto rep = check_weight_condition(WeightScheme::harmonic(), 100);
    EXPECT_EQ(*rep.exact, harmonic_exact(101) - 1);
    EXPECT_EQ(rep.hint, "growing (divergence-like)");
}

TEST(WeightCondition, InverseSquareBounded) {
    auto w = WeightScheme::custom([](std::int64_t n) { return Rational(BigInt(1), BigInt(n) * n); }, "1/n^2");
    auto rep = check_weight_condition(w, 1000000);
    EXPECT_TRUE(rep.partial.certainly_at_most(2));
    EXPECT_EQ(rep.hint, "saturating");
}

TEST(WeightCondition, Constant) {
    auto w = WeightScheme::custom([](std::int64_t) { return Rational(1); }, "1");
    EXPECT_EQ(*check_weight_condition(w, 50).exact, 0);
}
