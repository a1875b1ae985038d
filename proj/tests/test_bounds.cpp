#include "markoff_kfib/bounds.hpp"
#include "markoff_kfib/classifier.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

using namespace markoff_kfib;

namespace {

// Reference decimals computed independently at 30 significant digits.
Rational decimal(const std::string& digits) {
    const auto dot = digits.find('.');
    const BigInt num = parse_bigint(digits.substr(0, dot) + digits.substr(dot + 1));
    return Rational(num, pow_int(BigInt(10), static_cast<unsigned>(digits.size() - dot - 1)));
}

// The enclosure meets [v - eps, v + eps] with eps = 10^-14.
::testing::AssertionResult near(const RealBound& b, const std::string& ref) {
    const Rational v = decimal(ref);
    const Rational eps(1, BigInt("100000000000000"));
    if (b.lo <= v + eps && b.hi >= v - eps) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "[" << to_string(b.lo) << ", " << to_string(b.hi) << "] misses " << ref;
}

const std::string kL2 = "0.409469300808709254563497886138";
const std::string kL3 = "0.120348860082051382567091630793";
const std::string kL3Printed = "-0.0758539627596178136782935434392";
const std::string kL4 = "0.329179606750063091077247899381";

}  // namespace

TEST(Lk, Examples) {
    const auto l4 = lk(KParam(4));
    EXPECT_LE(l4.value.width(), default_tolerance());
    EXPECT_TRUE(near(l4.value, kL4));
    EXPECT_TRUE(near(lk(KParam(2)).value, kL2));
    EXPECT_TRUE(near(lk(KParam(3)).value, kL3));
}

TEST(Lk, PrintedThirdReadingIsNegative) {
    const auto b = enclose(l3_as_printed_expr(), default_tolerance());
    EXPECT_TRUE(near(b, kL3Printed));
    EXPECT_LT(b.hi, 0);
}

TEST(Lk, PositiveForAllK) {
    for (unsigned kv = 2; kv <= 100; ++kv) ASSERT_GT(lk(KParam(kv)).value.lo, 0) << kv;
}

TEST(Lk, RejectsSmallK) {
    EXPECT_THROW(lk(KParam(1)), PreconditionError);
    EXPECT_THROW(check_lk_gt_alpha_inv2(KParam(1)), PreconditionError);
}

TEST(LkVsAlpha, Examples) {
    EXPECT_TRUE(check_lk_gt_alpha_inv2(KParam(2)));
    EXPECT_TRUE(check_lk_gt_alpha_inv2(KParam(4)));
    EXPECT_TRUE(check_lk_gt_alpha_inv2(KParam(50)));
}

TEST(LkVsAlpha, HoldsUpToHundred) {
    for (unsigned kv = 2; kv <= 100; ++kv) ASSERT_TRUE(check_lk_gt_alpha_inv2(KParam(kv))) << kv;
}

TEST(Karamata, Examples) {
    EXPECT_TRUE(near(karamata_lower(KParam(3), 2), "1.10157714949064898694424046168"));
    EXPECT_TRUE(near(karamata_lower(KParam(2), 3), "10.1341066850749472127312799432"));
    EXPECT_TRUE(near(karamata_lower(KParam(4), 2), "5.29974055333725079024487079745"));
}

TEST(Karamata, RangeErrors) {
    EXPECT_THROW(karamata_lower(KParam(2), 2), PreconditionError);
    EXPECT_THROW(karamata_lower(KParam(3), 1), PreconditionError);
    EXPECT_THROW(karamata_lower(KParam(1), 5), PreconditionError);
    EXPECT_NO_THROW(karamata_lower(KParam(2), 3));
}

TEST(Karamata, BoundHoldsOnThresholdTriples) {
    for (unsigned kv = 2; kv <= 8; ++kv) {
        const KParam k(kv);
        for (Index a = 1; a <= 20; ++a)
            for (Index b = a; b <= 20; ++b) {
                const Index c = kv == 2 ? a + b + 1 : a + b;
                if (c > 20) continue;
                const BigInt m = m_k_indices(k, IndexTriple(a, b, c));
                ASSERT_GT(Rational(m), karamata_lower(k, c).lo) << kv << " " << a << " " << b;
                ASSERT_TRUE(exceeds_karamata(k, c, m)) << kv << " " << a << " " << b;
            }
    }
}

TEST(Karamata, IntegerBelowBoundIsRejected) {
    // the bound is tight enough that m - 1 can fall under it; exceeds_karamata must say so
    const auto b = karamata_lower(KParam(4), 2);
    const BigInt below = numerator(b.lo) / denominator(b.lo);
    EXPECT_FALSE(exceeds_karamata(KParam(4), 2, below));
    EXPECT_TRUE(exceeds_karamata(KParam(4), 2, below + 1));
}

TEST(MUpper, Examples) {
    EXPECT_EQ(m_upper_for_c(KParam(2), 4), 110);
    EXPECT_EQ(m_upper_for_c(KParam(2), 1), 0);
    EXPECT_EQ(m_upper_for_c(KParam(3), 3), 72);
    EXPECT_THROW(m_upper_for_c(KParam(2), 0), PreconditionError);
}

TEST(MUpper, IsMaximumOverThirdIndex) {
    for (unsigned kv = 2; kv <= 6; ++kv) {
        const KParam k(kv);
        for (Index c = 1; c <= 15; ++c) {
            const BigInt top = m_upper_for_c(k, c);
            EXPECT_EQ(top, m_k_indices(k, IndexTriple(1, 1, c)));
            for (Index a = 1; a <= c; ++a)
                for (Index b = a; b <= c; ++b) ASSERT_LE(m_k_indices(k, IndexTriple(a, b, c)), top);
        }
    }
}

TEST(Monotonicity, ExhaustiveStrict) {
    for (unsigned kv = 2; kv <= 6; ++kv) {
        const KParam k(kv);
        for (Index c = 3; c <= 15; ++c)
            for (Index a = 1; a <= c; ++a)
                for (Index b = a; b <= c; ++b) {
                    const BigInt m = m_k_indices(k, IndexTriple(a, b, c));
                    for (Index a2 = a; a2 <= c; ++a2)
                        for (Index b2 = std::max(b, a2); b2 <= c; ++b2) {
                            if (a2 == a && b2 == b) continue;
                            ASSERT_GT(m, m_k_indices(k, IndexTriple(a2, b2, c)))
                                << kv << " " << a << "," << b << " vs " << a2 << "," << b2 << " c=" << c;
                        }
                }
    }
}

TEST(CWindow, Examples) {
    const auto w = c_window(KParam(3), BigInt(2180));
    EXPECT_EQ(w.candidates, std::vector<Index>{5});
    EXPECT_TRUE(w.exceptional.empty());

    EXPECT_TRUE(c_window(KParam(2), BigInt(110)).contains(4));

    // alpha_2^4 ~ 33.97 < 64 < alpha_2^6 ~ 197.99: the proper window is {3}
    const auto w8 = c_window(KParam(2), BigInt(8));
    EXPECT_EQ(w8.candidates, std::vector<Index>{3});
    EXPECT_EQ(w8.exceptional, std::vector<Index>{4});
}

TEST(CWindow, Errors) {
    EXPECT_THROW(c_window(KParam(1), BigInt(5)), PreconditionError);
    EXPECT_THROW(c_window(KParam(2), BigInt(0)), PreconditionError);
}

TEST(CWindow, AtMostOneCandidate) {
    for (unsigned kv = 2; kv <= 6; ++kv)
        for (long long m = 1; m <= 5000; ++m) ASSERT_LE(c_window(KParam(kv), BigInt(m)).candidates.size(), 1U);
}

TEST(CWindow, AgreesWithLogarithmsAwayFromBoundaries) {
    for (unsigned kv = 2; kv <= 6; ++kv) {
        const long double alpha = (kv + std::sqrt(static_cast<long double>(kv * kv + 4))) / 2;
        for (long long m = 1; m <= 20000; ++m) {
            // c - 1 < log_{alpha^2}((k^2+4) m) < c
            const long double t = std::log(static_cast<long double>(kv * kv + 4) * m) / (2 * std::log(alpha));
            const long double frac = t - std::floor(t);
            if (frac < 1e-9L || frac > 1 - 1e-9L) continue;
            const auto c = static_cast<Index>(std::floor(t)) + 1;
            const auto w = c_window(KParam(kv), BigInt(m));
            const std::vector<Index> expected = c >= 2 ? std::vector<Index>{c} : std::vector<Index>{};
            ASSERT_EQ(w.candidates, expected) << kv << " " << m;
        }
    }
}

TEST(CWindow, ContainsEveryMinimalSolutionIndex) {
    for (unsigned kv = 2; kv <= 6; ++kv) {
        const KParam k(kv);
        for (const auto& s : enumerate_solutions(k, 18)) {
            if (!s.minimal) continue;
            ASSERT_TRUE(c_window(k, s.m).contains(s.idx.c)) << kv << " " << s.idx.str();
        }
    }
}
