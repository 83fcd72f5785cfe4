#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_fixtures.hpp"

using namespace divisum;

namespace {

int trial_moebius(std::int64_t n) {
    int mu = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

Factorization trial_factorize(std::int64_t n) {
    Factorization f;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

} // namespace

TEST(Sieve, SmallestPrimeFactorsUpToTen) {
    const FactorSieve s = build_sieve(10);
    const std::uint32_t expected[] = {2, 3, 2, 5, 2, 7, 2, 3, 2};
    for (int n = 2; n <= 10; ++n) EXPECT_EQ(s.spf(n), expected[n - 2]) << n;
}

TEST(Sieve, LimitTwo) {
    const FactorSieve s(2);
    EXPECT_EQ(s.spf(2), 2u);
    EXPECT_EQ(s.primes().size(), 1u);
}

TEST(Sieve, RejectsTinyLimit) {
    EXPECT_THROW(FactorSieve(1), std::invalid_argument);
    EXPECT_THROW(FactorSieve(-5), std::invalid_argument);
}

TEST(Sieve, OversizedLimitIsResourceError) {
    EXPECT_THROW(FactorSieve(FactorSieve::kMaxLimit + 1), resource_error);
}

TEST(Sieve, PrimeCountTenMillionMatchesTrialDivision) {
    const FactorSieve s(10000000);
    EXPECT_EQ(s.primes().size(), 664579u);
    // Independent count on a window by trial division.
    std::int64_t trial = 0, sieved = 0;
    for (std::int64_t n = 9990000; n <= 10000000; ++n) {
        trial += is_prime_trial(n);
        sieved += s.is_prime(n);
    }
    EXPECT_EQ(trial, sieved);
}

TEST(Sieve, InvariantsHoldOnEveryEntry) {
    const auto& s = fixtures::sieve_1e6();
    for (std::int64_t n = 2; n <= s.limit(); ++n) {
        const std::int64_t p = s.spf(n);
        ASSERT_EQ(n % p, 0) << n;
        ASSERT_EQ(p == n, s.is_prime(n));
        ASSERT_EQ(s.spf(p), p) << "spf not prime at " << n;
    }
}

TEST(Sieve, ThreadCountDoesNotChangeTable) {
    const FactorSieve one(3000000, 1), four(3000000, 4);
    ASSERT_EQ(one.table().size(), four.table().size());
    EXPECT_TRUE(std::equal(one.table().begin(), one.table().end(), four.table().begin()));
}

TEST(Moebius, Examples) {
    const auto& s = fixtures::sieve_1e6();
    EXPECT_EQ(moebius(1, s), 1);
    EXPECT_EQ(moebius(6, s), 1);
    EXPECT_EQ(moebius(12, s), 0);
    EXPECT_EQ(moebius(30, s), -1);
    EXPECT_THROW(moebius(0, s), std::invalid_argument);
    EXPECT_THROW(moebius(s.limit() + 1, s), std::invalid_argument);
}

TEST(Moebius, DivisorSumIsIndicatorOfOne) {
    const auto& s = fixtures::sieve_1e6();
    // Dirichlet convolution mu * 1 by additive sieving over all n <= 1e6.
    std::vector<int> acc(static_cast<std::size_t>(s.limit()) + 1, 0);
    for (std::int64_t d = 1; d <= s.limit(); ++d) {
        const int mu = moebius(d, s);
        if (mu == 0) continue;
        for (std::int64_t m = d; m <= s.limit(); m += d) acc[m] += mu;
    }
    EXPECT_EQ(acc[1], 1);
    for (std::int64_t n = 2; n <= s.limit(); ++n) ASSERT_EQ(acc[n], 0) << n;
}

TEST(VonMangoldt, DivisorSumIsLog) {
    const auto& s = fixtures::sieve_1e6();
    std::vector<double> acc(static_cast<std::size_t>(s.limit()) + 1, 0.0);
    for (std::int64_t d = 2; d <= s.limit(); ++d) {
        const double v = von_mangoldt(d, s);
        if (v == 0.0) continue;
        for (std::int64_t m = d; m <= s.limit(); m += d) acc[m] += v;
    }
    for (std::int64_t n = 1; n <= s.limit(); ++n)
        ASSERT_NEAR(acc[n], std::log(static_cast<double>(n)), 1e-9) << n;
}

TEST(VonMangoldt, PrimePowers) {
    const auto& s = fixtures::sieve_1e6();
    EXPECT_DOUBLE_EQ(von_mangoldt(16, s), std::log(2.0));
    EXPECT_DOUBLE_EQ(von_mangoldt(15, s), 0.0);
    EXPECT_DOUBLE_EQ(von_mangoldt(1, s), 0.0);
    EXPECT_DOUBLE_EQ(von_mangoldt(243, s), std::log(3.0));
}

TEST(PhiJ, Examples) {
    const auto& s = fixtures::sieve_1e6();
    EXPECT_EQ(phi_j(6, 0, s), 6);
    EXPECT_EQ(phi_j(6, 1, s), 2);
    EXPECT_EQ(phi_j(15, 2, s), 3);
    EXPECT_EQ(phi_j(1, 5, s), 1);
    EXPECT_EQ(phi_j(6, 2, s), 0);   // p = 2 gives a zero factor
    EXPECT_EQ(phi_j(10, 3, s), -2); // (2-3)(5-3)
    EXPECT_THROW(phi_j(12, 1, s), std::invalid_argument);
}

TEST(PhiJ, ReducesToIdentityAndEulerPhi) {
    const auto& s = fixtures::sieve_1e6();
    for (std::int64_t n = 1; n <= s.limit(); ++n) {
        if (!is_squarefree(n, s)) continue;
        ASSERT_EQ(phi_j(n, 0, s), n);
        ASSERT_EQ(phi_j(n, 1, s), euler_phi(n, s)) << n;
    }
}

TEST(POf, Examples) {
    EXPECT_EQ(p_of(3), 3);
    EXPECT_EQ(p_of(4), 1);
    EXPECT_EQ(p_of(0), 1);
    EXPECT_EQ(p_of(1), 1);
    EXPECT_EQ(p_of(2), 2);
}

TEST(MOf, ProductAndSumFormsAgree) {
    const auto& s = fixtures::sieve_1e6();
    EXPECT_DOUBLE_EQ(m_of(1, s), 1.0);
    EXPECT_NEAR(m_of(2, s), 1.0 + 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(m_of(6, s), (1.0 + 1.0 / std::sqrt(2.0)) * (1.0 + 1.0 / std::sqrt(3.0)), 1e-14);
    EXPECT_NEAR(m_of(6, s), 2.6927, 1e-4);
    for (std::int64_t k = 1; k <= 5000; ++k) {
        double sum = 0.0;
        for (auto [d, mu] : squarefree_divisors(k, s)) sum += 1.0 / std::sqrt(static_cast<double>(d));
        ASSERT_NEAR(m_of(k, s), sum, 1e-12) << k;
    }
}

TEST(Factorize, AgreesWithTrialDivisionOnRandomInputs) {
    const auto& s = fixtures::sieve_1e6();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> dist(1, s.limit());
    for (int i = 0; i < 10000; ++i) {
        const std::int64_t n = dist(rng);
        ASSERT_EQ(s.factorize(n), trial_factorize(n)) << n;
        ASSERT_EQ(moebius(n, s), trial_moebius(n)) << n;
    }
}

TEST(Factorize, BeyondTableUsesTrialDivision) {
    const auto& s = fixtures::sieve_1e6();
    const std::int64_t n = 999983LL * 1000003LL;
    EXPECT_EQ(factorize_any(n, s), trial_factorize(n));
    EXPECT_EQ(factorize_any(-12, s), (Factorization{{2, 2}, {3, 1}}));
}

TEST(Plumbing, DivisorsKernelAndPrimeRanges) {
    const auto& s = fixtures::sieve_1e6();
    EXPECT_EQ(divisors(12, s), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(squarefree_kernel(72, s), 6);
    EXPECT_EQ(euler_phi(36, s), 12);
    EXPECT_EQ(primes_in(10, 30, s), (std::vector<std::int64_t>{11, 13, 17, 19, 23, 29}));
    EXPECT_EQ(prime_support(-90, s), (std::vector<std::int64_t>{2, 3, 5}));
}
