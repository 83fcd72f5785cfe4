#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "naive_oracles.hpp"

using namespace divisum;
using fixtures::consts_1e6;
using fixtures::sieve_1e6;
namespace oracle = fixtures::oracle;

using namespace fixtures::naive;

TEST(Constants, MatchFrozenOracle) {
    const auto& t = consts_1e6();
    EXPECT_NEAR(t.c2, oracle::kC2_1e6, 1e-12);
    EXPECT_NEAR(t.c3, oracle::kC3_1e6, 1e-12);
    EXPECT_NEAR(t.d_j(1), oracle::kD1_1e6, 1e-10);
    EXPECT_NEAR(t.d_j(3), oracle::kD3_1e6, 1e-10);
    EXPECT_DOUBLE_EQ(t.d_j(2), t.gamma);
    EXPECT_NEAR(t.c2, 0.6601618158, 1e-10);
}

TEST(Constants, TenMillionTruncation) {
    const FactorSieve s(20000000);
    const double c2 = c_constant(2, 10000000, s), c3 = c_constant(3, 10000000, s);
    EXPECT_NEAR(c2, oracle::kC2_1e7, 1e-12);
    EXPECT_NEAR(c3, oracle::kC3_1e7, 1e-12);
    EXPECT_NEAR(d_constant(1, 10000000, s), oracle::kD1_1e7, 1e-10);
    EXPECT_NEAR(d_constant(3, 10000000, s), oracle::kD3_1e7, 1e-10);
    // Doubling the truncation point.
    EXPECT_LT(std::fabs(c_constant(2, 20000000, s) - c2), 1e-10);
    EXPECT_LT(std::fabs(c_constant(3, 20000000, s) - c3), 1e-10);
    EXPECT_LT(std::fabs(d_constant(1, 20000000, s) - d_constant(1, 10000000, s)), 1e-10);
}

TEST(Constants, SmallTruncationIsClose) {
    const auto& s = sieve_1e6();
    EXPECT_NEAR(c_constant(2, 1000, s), oracle::kC2_1e3, 1e-12);
    EXPECT_NEAR(c_constant(3, 1000, s), oracle::kC3_1e3, 1e-12);
    EXPECT_LT(std::fabs(c_constant(2, 1000, s) - c_constant(2, 1000000, s)), 1e-6);
    EXPECT_LE(c_constant_detail(2, 1000000, s).tail_bound, 1.0 / (1e6 * std::log(1e6)));
    EXPECT_THROW(c_constant(4, 1000, s), unsupported_error);
    EXPECT_THROW(c_constant(2, 999, s), precondition_error);
    EXPECT_THROW(d_constant(4, 1000, s), unsupported_error);
}

TEST(SeriesJ, Examples) {
    const auto& s = sieve_1e6();
    EXPECT_TRUE(sseries_j(3, 2, s).is_zero());
    EXPECT_EQ(sseries_j(2, 2, s), SeriesExact::of(2, 1));
    EXPECT_EQ(sseries_j(6, 2, s), SeriesExact::of(4, 1));
    EXPECT_EQ(sseries_j(6, 3, s), SeriesExact::of(3, 0, 1));
    EXPECT_EQ(sseries_j(12, 1, s), SeriesExact::of(Rational(3)));
    EXPECT_EQ(sseries_j(-6, 2, s), sseries_j(6, 2, s));
    EXPECT_TRUE(sseries_j(4, 3, s).is_zero());
    EXPECT_THROW(sseries_j(0, 2, s), std::invalid_argument);
    EXPECT_THROW(sseries_j(6, 4, s), unsupported_error);
    EXPECT_EQ(sseries_j(6, 2, s).str(), "4*C2");
    EXPECT_EQ(SeriesExact::zero().str(), "0");
    EXPECT_EQ(SeriesExact::of(Rational(5, 2)).str(), "5/2");
}

TEST(SeriesJ, TwinSeriesClosedForm) {
    const auto& s = sieve_1e6();
    const auto& t = consts_1e6();
    // 2 C2 prod_{p | n, p > 2} (p-1)/(p-2) for even n.
    for (std::int64_t n = 2; n <= 2000; n += 2) {
        double v = 2.0 * t.c2;
        for (auto p : prime_support(n, s))
            if (p > 2) v *= (p - 1.0) / (p - 2.0);
        ASSERT_NEAR(sseries_j(n, 2, s).value(t), v, 1e-13 * v) << n;
        ASSERT_NEAR(sseries_j_float(n, 2, s, t), v, 1e-13 * v) << n;
    }
}

TEST(SeriesJ, DependsOnlyOnOddKernelForTwins) {
    const auto& s = sieve_1e6();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const std::int64_t m = 1 + 2 * static_cast<std::int64_t>(rng() % 5000);
        const int a = 1 + static_cast<int>(rng() % 6);
        ASSERT_EQ(sseries_j(m << a, 2, s), sseries_j(2 * m, 2, s)) << m;
        ASSERT_EQ(sseries_j(m * m * 2, 2, s), sseries_j(2 * m, 2, s)) << m;
    }
}

TEST(SeriesJ, MultiplicativeOverCoprimeParts) {
    const auto& s = sieve_1e6();
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 1000) {
        const std::int64_t a = 1 + static_cast<std::int64_t>(rng() % 3000);
        const std::int64_t b = 1 + static_cast<std::int64_t>(rng() % 3000);
        if (std::gcd(a, b) != 1 || !is_squarefree(a, s) || !is_squarefree(b, s)) continue;
        ++checked;
        ASSERT_EQ(sseries_j(a * b, 1, s), sseries_j(a, 1, s) * sseries_j(b, 1, s));
        // For j = 2, 3 peel the required prime off a reference argument.
        const std::int64_t a2 = a % 2 ? 2 * a : a, b2 = b % 2 ? b : b / 2;
        if (std::gcd(a2, b2) == 1) {
            const auto lhs = sseries_j(a2 * b2, 2, s).scaled(sseries_j(2, 2, s).q);
            const auto rhs = sseries_j(a2, 2, s).scaled(sseries_j(2 * b2, 2, s).q);
            ASSERT_EQ(lhs, rhs);
        }
        const std::int64_t a3 = a % 3 ? 3 * a : a, b3 = b % 3 ? b : b / 3;
        if (std::gcd(a3, b3) == 1 && a3 % 2 == 0 && b3 % 2 == 1) {
            const auto lhs = sseries_j(a3 * b3, 3, s).scaled(sseries_j(6, 3, s).q);
            const auto rhs = sseries_j(a3, 3, s).scaled(sseries_j(6 * b3, 3, s).q);
            ASSERT_EQ(lhs, rhs);
        }
    }
}

TEST(NuP, Examples) {
    EXPECT_EQ(nu_p(std::vector<std::int64_t>{0, 2, 4}, 2), 1);
    EXPECT_EQ(nu_p(std::vector<std::int64_t>{0, 2, 4}, 3), 3);
    EXPECT_EQ(nu_p(std::vector<std::int64_t>{0}, 7), 1);
    EXPECT_EQ(nu_p(std::vector<std::int64_t>{-1, 4}, 5), 1);
    EXPECT_THROW(nu_p(std::vector<std::int64_t>{1, 1}, 3), std::invalid_argument);
}

TEST(SeriesVec, Examples) {
    const auto& s = sieve_1e6();
    const auto& t = consts_1e6();
    using V = std::vector<std::int64_t>;
    EXPECT_EQ(sseries_vec_exact(V{0, 2}, s), SeriesExact::of(2, 1));
    EXPECT_EQ(sseries_vec_exact(V{0, 2, 6}, s), SeriesExact::of(6, 1, 1));
    EXPECT_TRUE(sseries_vec_exact(V{0, 1, 2}, s).is_zero());
    EXPECT_TRUE(sseries_vec_exact(V{0, 2, 4}, s).is_zero());
    EXPECT_EQ(sseries_vec_exact(V{5}, s), SeriesExact::of(1));
    EXPECT_DOUBLE_EQ(sseries_vec(V{5}, 1000000, s).value, 1.0);
    EXPECT_EQ(sseries_vec(V{0, 1, 2}, 1000000, s).value, 0.0);
    EXPECT_NEAR(sseries_vec(V{0, 2}, 1000000, s).value, 2 * t.c2, 1e-12);
    EXPECT_THROW(sseries_vec_exact(V{0, 2, 6, 8}, s), unsupported_error);
    EXPECT_THROW(sseries_vec(V{0, 0}, 1000000, s), std::invalid_argument);
}

TEST(SeriesVec, PairReductionIsBitExact) {
    const auto& s = sieve_1e6();
    for (std::int64_t k = -200; k <= 200; ++k) {
        if (k == 0) continue;
        const std::vector<std::int64_t> v{0, k};
        ASSERT_EQ(sseries_vec_exact(v, s), sseries_j(k, 2, s)) << k;
        ASSERT_EQ(sseries_vec_exact(v, s), local_factor_series(v, s)) << k;
    }
}

TEST(SeriesVec, TripleReductionIsBitExactAndMatchesProduct) {
    const auto& s = sieve_1e6();
    const auto& t = consts_1e6();
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> dist(-1000, 1000);
    int done = 0;
    while (done < 500) {
        const std::int64_t k1 = dist(rng), k2 = dist(rng);
        if (k1 == 0 || k2 == 0 || k1 == k2) continue;
        ++done;
        const std::vector<std::int64_t> v{0, k1, k2};
        const auto exact = sseries_vec_exact(v, s);
        ASSERT_EQ(exact, local_factor_series(v, s)) << k1 << "," << k2;
        const double prod = sseries_vec(v, 1000000, s).value;
        ASSERT_NEAR(exact.value(t), prod, 1e-6 * std::max(1.0, prod)) << k1 << "," << k2;
    }
}

TEST(SeriesVec, ShiftInvariance) {
    const auto& s = sieve_1e6();
    for (std::int64_t c : {-7, 3, 100}) {
        const std::vector<std::int64_t> a{0, 2, 6, 8}, b{c, 2 + c, 6 + c, 8 + c};
        const double va = sseries_vec(a, 1000000, s).value, vb = sseries_vec(b, 1000000, s).value;
        EXPECT_NEAR(va, vb, 1e-9 * va);
        const std::vector<std::int64_t> t3{c, c + 4, c + 10};
        EXPECT_EQ(sseries_vec_exact(t3, s), sseries_vec_exact(std::vector<std::int64_t>{0, 4, 10}, s));
    }
}

TEST(SeriesVec, TailBoundIsReported) {
    const auto& s = sieve_1e6();
    const auto f = sseries_vec(std::vector<std::int64_t>{0, 2, 6}, 1000000, s);
    EXPECT_GT(f.tail_bound, 0.0);
    EXPECT_LE(std::fabs(f.value - f.truncated), f.tail_bound * f.truncated);
}

TEST(HJ, Examples) {
    const auto& s = sieve_1e6();
    EXPECT_DOUBLE_EQ(h_j_of(1, 1, s), 0.0);
    EXPECT_NEAR(h_j_of(6, 2, s), std::log(2.0) + std::log(3.0) / 2.0, 1e-15);
    // j = 1: second sum is sum log p / (p (p - 1)).
    const double expect =
        std::log(2.0) + std::log(3.0) / 2 - (std::log(2.0) / 2 + std::log(3.0) / 6);
    EXPECT_NEAR(h_j_of(6, 1, s), expect, 1e-15);
    // j = 3 excludes p = 2 from the correction.
    const double expect3 = std::log(2.0) + std::log(3.0) / 2 + std::log(3.0) / (1.0 * 2.0);
    EXPECT_NEAR(h_j_of(6, 3, s), expect3, 1e-15);
    EXPECT_THROW(h_j_of(0, 1, s), std::invalid_argument);
}
