#pragma once

// Smallest-prime-factor sieve and the multiplicative-function primitives
// built on it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <new>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "divisum/errors.hpp"
#include "divisum/summation.hpp"

namespace divisum {

struct PrimePower {
    std::int64_t prime;
    int exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Primes strictly increasing, product of prime^exponent equals n.
using Factorization = std::vector<PrimePower>;

namespace detail {

inline std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (std::uint64_t m = std::uint64_t{p} * p; m <= limit; m += p) composite[m] = true;
    }
    return out;
}

inline std::int64_t isqrt(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace detail

// One 32-bit smallest-prime-factor entry per integer in [0, limit]; entries 0
// and 1 hold 0. Immutable after construction.
class FactorSieve {
public:
    static constexpr std::int64_t kMaxLimit = std::int64_t{1} << 31;

    explicit FactorSieve(std::int64_t limit, unsigned threads = 0) : limit_(limit) {
        require_arg(limit >= 2, "sieve limit must be >= 2, got " + std::to_string(limit));
        if (limit > kMaxLimit)
            throw resource_error("sieve limit " + std::to_string(limit) + " exceeds 2^31");
        try {
            spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
        } catch (const std::bad_alloc&) {
            throw resource_error("cannot allocate sieve table for limit " + std::to_string(limit));
        }
        const auto root = static_cast<std::uint32_t>(detail::isqrt(limit));
        const auto base = detail::small_primes(root);

        // Segments are independent: each marks multiples of the base primes in
        // ascending order, so the first writer is the smallest prime factor.
        const std::int64_t seg_len = std::int64_t{1} << 18;
        const std::size_t segs = segment_count(2, limit + 1, seg_len);
        parallel_for(segs, threads, [&](std::size_t s) {
            const std::int64_t lo = 2 + static_cast<std::int64_t>(s) * seg_len;
            const std::int64_t hi = std::min(limit + 1, lo + seg_len);
            for (std::uint32_t p : base) {
                const std::int64_t pp = std::int64_t{p} * p;
                if (pp >= hi) break;
                std::int64_t m = std::max(pp, (lo + p - 1) / p * p);
                for (; m < hi; m += p)
                    if (spf_[m] == 0) spf_[m] = p;
            }
            for (std::int64_t n = lo; n < hi; ++n)
                if (spf_[n] == 0) spf_[n] = static_cast<std::uint32_t>(n);
        });
        for (std::int64_t n = 2; n <= limit; ++n)
            if (spf_[n] == n) primes_.push_back(n);
    }

    std::int64_t limit() const { return limit_; }

    std::uint32_t spf(std::int64_t n) const {
        check_range(n, 2);
        return spf_[static_cast<std::size_t>(n)];
    }

    bool is_prime(std::int64_t n) const {
        if (n < 2) return false;
        check_range(n, 2);
        return spf_[static_cast<std::size_t>(n)] == n;
    }

    // All primes <= limit, ascending.
    std::span<const std::int64_t> primes() const { return primes_; }

    std::span<const std::uint32_t> table() const { return spf_; }

    Factorization factorize(std::int64_t n) const {
        check_range(n, 1);
        Factorization f;
        while (n > 1) {
            const std::int64_t p = spf_[static_cast<std::size_t>(n)];
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.push_back({p, e});
        }
        return f;
    }

    // Calls fn(p) for each distinct prime p | n, ascending. n in [1, limit].
    template <class Fn>
    void for_each_prime(std::int64_t n, Fn&& fn) const {
        check_range(n, 1);
        while (n > 1) {
            const std::int64_t p = spf_[static_cast<std::size_t>(n)];
            do n /= p;
            while (n % p == 0);
            fn(p);
        }
    }

    void check_range(std::int64_t n, std::int64_t lo) const {
        if (n < lo || n > limit_)
            throw std::invalid_argument("n = " + std::to_string(n) + " outside sieve range [" +
                                        std::to_string(lo) + ", " + std::to_string(limit_) + "]");
    }

private:
    std::int64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::int64_t> primes_;
};

inline FactorSieve build_sieve(std::int64_t limit, unsigned threads = 0) {
    return FactorSieve(limit, threads);
}

// Trial-division primality for values that may lie outside any sieve.
inline bool is_prime_trial(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::int64_t d = 5; d * d <= n; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

// Factorization of |n| >= 1. Uses the table when |n| <= limit, otherwise
// trial division by the sieve's primes (needs limit^2 >= |n|).
inline Factorization factorize_any(std::int64_t n, const FactorSieve& sieve) {
    if (n < 0) n = -n;
    require_arg(n >= 1, "cannot factorize 0");
    if (n <= sieve.limit()) return sieve.factorize(n);
    Factorization f;
    for (std::int64_t p : sieve.primes()) {
        if (p * p > n) break;
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.push_back({p, e});
    }
    if (n > 1) {
        const std::int64_t last = sieve.primes().back();
        if (last * last < n)
            throw std::invalid_argument("cannot factorize beyond limit^2 of the sieve");
        f.push_back({n, 1});
    }
    return f;
}

// Distinct primes of |n|, ascending.
inline std::vector<std::int64_t> prime_support(std::int64_t n, const FactorSieve& sieve) {
    std::vector<std::int64_t> out;
    for (const auto& pp : factorize_any(n, sieve)) out.push_back(pp.prime);
    return out;
}

inline int moebius(std::int64_t n, const FactorSieve& sieve) {
    sieve.check_range(n, 1);
    int mu = 1;
    while (n > 1) {
        const std::int64_t p = sieve.spf(n);
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return mu;
}

inline bool is_squarefree(std::int64_t n, const FactorSieve& sieve) {
    return moebius(n, sieve) != 0;
}

// phi_j(n) = prod_{p | n} (p - j) on squarefree n. Factors with p <= j give
// zero or negative values and are returned as is.
inline std::int64_t phi_j(std::int64_t n, std::int64_t j, const FactorSieve& sieve) {
    require_arg(j >= 0, "phi_j needs j >= 0");
    require_arg(is_squarefree(n, sieve),
                "phi_j is only defined on squarefree n, got " + std::to_string(n));
    std::int64_t v = 1;
    sieve.for_each_prime(n, [&](std::int64_t p) { v *= p - j; });
    return v;
}

// p(j): j when j is prime, 1 otherwise (0 and 1 are not prime).
inline std::int64_t p_of(std::int64_t j) { return is_prime_trial(j) ? j : 1; }

// m(k) = prod_{p | k} (1 + 1/sqrt p).
inline double m_of(std::int64_t k, const FactorSieve& sieve) {
    double v = 1.0;
    sieve.for_each_prime(k, [&](std::int64_t p) { v *= 1.0 + 1.0 / std::sqrt(static_cast<double>(p)); });
    return v;
}

inline std::int64_t euler_phi(std::int64_t n, const FactorSieve& sieve) {
    std::int64_t v = n;
    sieve.for_each_prime(n, [&](std::int64_t p) { v = v / p * (p - 1); });
    return v;
}

// Sorted divisors of n.
inline std::vector<std::int64_t> divisors(std::int64_t n, const FactorSieve& sieve) {
    std::vector<std::int64_t> out{1};
    for (const auto& [p, e] : sieve.factorize(n)) {
        const std::size_t base = out.size();
        std::int64_t pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t t = 0; t < base; ++t) out.push_back(out[t] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Squarefree divisors of n paired with mu(d), sorted by d.
inline std::vector<std::pair<std::int64_t, int>> squarefree_divisors(std::int64_t n,
                                                                     const FactorSieve& sieve) {
    std::vector<std::pair<std::int64_t, int>> out{{1, 1}};
    sieve.for_each_prime(n, [&](std::int64_t p) {
        const std::size_t base = out.size();
        for (std::size_t t = 0; t < base; ++t) out.push_back({out[t].first * p, -out[t].second});
    });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::int64_t squarefree_kernel(std::int64_t n, const FactorSieve& sieve) {
    std::int64_t v = 1;
    sieve.for_each_prime(n, [&](std::int64_t p) { v *= p; });
    return v;
}

// Lambda(n) = log p for n = p^m, else 0. Natural log.
inline double von_mangoldt(std::int64_t n, const FactorSieve& sieve) {
    if (n < 2) return 0.0;
    const std::int64_t p = sieve.spf(n);
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

// Primes in [lo, hi].
inline std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi, const FactorSieve& sieve) {
    require_arg(hi <= sieve.limit(), "primes_in range exceeds sieve limit");
    const auto all = sieve.primes();
    auto a = std::lower_bound(all.begin(), all.end(), lo);
    auto b = std::upper_bound(all.begin(), all.end(), hi);
    return {a, b};
}

} // namespace divisum
