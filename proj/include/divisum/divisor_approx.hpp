#pragma once

// Point and batch evaluation of Lambda, Lambda_R and lambda_R, the partial
// sums psi and psi_R, and primes in arithmetic progressions.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "divisum/arith.hpp"
#include "divisum/errors.hpp"
#include "divisum/summation.hpp"

namespace divisum {

enum class ApproxKind { LambdaR, LambdaLowerR, VonMangoldt };

inline const char* to_string(ApproxKind k) {
    switch (k) {
    case ApproxKind::LambdaR: return "LambdaR";
    case ApproxKind::LambdaLowerR: return "LambdaLowerR";
    case ApproxKind::VonMangoldt: return "VonMangoldt";
    }
    return "?";
}

// Largest divisor admitted by a real cutoff R. The 1e-9 slack keeps integer
// R values computed in floating point (e.g. N^0.5) from flapping.
inline std::int64_t divisor_cutoff(double R) {
    require_arg(R >= 1.0, "cutoff R must be >= 1");
    return static_cast<std::int64_t>(std::floor(R + 1e-9));
}

// Dense values for n in [start, start + size()). Indices n <= 0 read as 0.
class ApproxArray {
public:
    ApproxArray(ApproxKind kind, double R, std::int64_t start, std::vector<double> values)
        : kind_(kind), R_(R), start_(start), values_(std::move(values)) {}

    ApproxKind kind() const { return kind_; }
    double cutoff() const { return R_; }
    std::int64_t start() const { return start_; }
    std::int64_t end() const { return start_ + static_cast<std::int64_t>(values_.size()); }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }

    double at(std::int64_t n) const {
        if (n <= 0) return 0.0;
        if (n < start_ || n >= end())
            throw std::out_of_range("ApproxArray index " + std::to_string(n) + " outside [" +
                                    std::to_string(start_) + ", " + std::to_string(end()) + ")");
        return values_[static_cast<std::size_t>(n - start_)];
    }

    // Unchecked, n in [start, end).
    double operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n - start_)]; }

private:
    ApproxKind kind_;
    double R_;
    std::int64_t start_;
    std::vector<double> values_;
};

namespace detail {

// mu(d) * log(R / d) for d in [0, D]; index 0 unused.
inline std::vector<double> lambda_r_weights(double R, const FactorSieve& sieve) {
    const std::int64_t D = divisor_cutoff(R);
    sieve.check_range(D, 1);
    const double logR = std::log(R);
    std::vector<double> w(static_cast<std::size_t>(D) + 1, 0.0);
    for (std::int64_t d = 1; d <= D; ++d) {
        const int mu = moebius(d, sieve);
        if (mu != 0) w[d] = mu * (logR - std::log(static_cast<double>(d)));
    }
    return w;
}

// d mu(d) sum_{r <= R, d | r} mu^2(r) / phi(r), the additive weights for lambda_R.
inline std::vector<double> lambda_lower_weights(double R, const FactorSieve& sieve) {
    const std::int64_t D = divisor_cutoff(R);
    sieve.check_range(D, 1);
    std::vector<double> inv_phi(static_cast<std::size_t>(D) + 1, 0.0);
    for (std::int64_t r = 1; r <= D; ++r)
        if (is_squarefree(r, sieve)) inv_phi[r] = 1.0 / static_cast<double>(euler_phi(r, sieve));
    std::vector<double> w(static_cast<std::size_t>(D) + 1, 0.0);
    for (std::int64_t d = 1; d <= D; ++d) {
        const int mu = moebius(d, sieve);
        if (mu == 0) continue;
        NeumaierSum s;
        for (std::int64_t r = d; r <= D; r += d) s.add(inv_phi[r]);
        w[d] = static_cast<double>(d) * mu * s.value();
    }
    return w;
}

} // namespace detail

// Lambda_R(n) = sum_{d | n, d <= R} mu(d) log(R/d); 0 for n <= 0.
inline double lambda_r_point(std::int64_t n, double R, const FactorSieve& sieve) {
    if (n <= 0) return 0.0;
    require_arg(n <= sieve.limit(), "lambda_r_point: n exceeds sieve limit");
    const std::int64_t D = divisor_cutoff(R);
    const double logR = std::log(R);
    double v = 0.0;
    for (const auto& [d, mu] : squarefree_divisors(n, sieve)) {
        if (d > D) break;
        v += mu * (logR - std::log(static_cast<double>(d)));
    }
    return v;
}

// lambda_R(n) = sum_{r <= R} mu^2(r)/phi(r) sum_{d | (r, n)} d mu(d); the
// inner sum is prod_{p | (r, n)} (1 - p).
inline double lambda_lower_r_point(std::int64_t n, double R, const FactorSieve& sieve) {
    if (n <= 0) return 0.0;
    require_arg(n <= sieve.limit(), "lambda_lower_r_point: n exceeds sieve limit");
    const std::int64_t D = divisor_cutoff(R);
    sieve.check_range(D, 1);
    NeumaierSum s;
    for (std::int64_t r = 1; r <= D; ++r) {
        if (!is_squarefree(r, sieve)) continue;
        double inner = 1.0;
        sieve.for_each_prime(std::gcd(r, n), [&](std::int64_t p) { inner *= 1.0 - static_cast<double>(p); });
        s.add(inner / static_cast<double>(euler_phi(r, sieve)));
    }
    return s.value();
}

// Additive sieve over [start, end): every d <= R adds its weight to all of
// its multiples in the range. Segments are filled independently.
inline ApproxArray batch(ApproxKind kind, std::int64_t start, std::int64_t end, double R,
                         const FactorSieve& sieve, unsigned threads = 0) {
    require_arg(start >= 1, "batch range must start at n >= 1");
    require_arg(end > start, "batch range is empty");
    require_arg(end <= sieve.limit() + 1, "batch range exceeds sieve limit");
    std::vector<double> values(static_cast<std::size_t>(end - start), 0.0);
    const std::size_t segs = segment_count(start, end);

    if (kind == ApproxKind::VonMangoldt) {
        parallel_for(segs, threads, [&](std::size_t s) {
            const std::int64_t a = start + static_cast<std::int64_t>(s) * kSegmentLength;
            const std::int64_t b = std::min(end, a + kSegmentLength);
            for (std::int64_t n = a; n < b; ++n) values[n - start] = von_mangoldt(n, sieve);
        });
        return ApproxArray(kind, R, start, std::move(values));
    }

    const auto w = kind == ApproxKind::LambdaR ? detail::lambda_r_weights(R, sieve)
                                               : detail::lambda_lower_weights(R, sieve);
    const auto D = static_cast<std::int64_t>(w.size()) - 1;
    parallel_for(segs, threads, [&](std::size_t s) {
        const std::int64_t a = start + static_cast<std::int64_t>(s) * kSegmentLength;
        const std::int64_t b = std::min(end, a + kSegmentLength);
        double* out = values.data() + (a - start);
        for (std::int64_t d = 1; d <= D; ++d) {
            const double wd = w[d];
            if (wd == 0.0) continue;
            for (std::int64_t m = (a + d - 1) / d * d; m < b; m += d) out[m - a] += wd;
        }
    });
    return ApproxArray(kind, R, start, std::move(values));
}

// psi(x) = sum_{n <= x} Lambda(n).
inline double psi(std::int64_t x, const FactorSieve& sieve, unsigned threads = 0) {
    if (x < 2) return 0.0;
    require_arg(x <= sieve.limit(), "psi: x exceeds sieve limit");
    return segmented_sum(2, x + 1, threads, [&](std::int64_t n) { return von_mangoldt(n, sieve); });
}

// psi_R(x) = sum_{n <= x} Lambda_R(n) = sum_{d <= R} mu(d) log(R/d) floor(x/d).
inline double psi_r(std::int64_t x, double R, const FactorSieve& sieve) {
    if (x < 1) return 0.0;
    require_arg(x <= sieve.limit(), "psi_r: x exceeds sieve limit");
    const std::int64_t D = std::min(divisor_cutoff(R), x);
    const double logR = std::log(R);
    NeumaierSum s;
    for (std::int64_t d = 1; d <= D; ++d) {
        const int mu = moebius(d, sieve);
        if (mu == 0) continue;
        s.add(mu * (logR - std::log(static_cast<double>(d))) * static_cast<double>(x / d));
    }
    return s.value();
}

// psi(x; q, a) = sum_{n <= x, n = a mod q} Lambda(n).
inline double psi_in_ap(std::int64_t x, std::int64_t q, std::int64_t a, const FactorSieve& sieve) {
    require_arg(q >= 1, "psi_in_ap: modulus q must be >= 1");
    if (x < 2) return 0.0;
    require_arg(x <= sieve.limit(), "psi_in_ap: x exceeds sieve limit");
    std::int64_t n = ((a % q) + q) % q;
    if (n == 0) n = q;
    NeumaierSum s;
    for (; n <= x; n += q) s.add(von_mangoldt(n, sieve));
    return s.value();
}

// sum_{q <= Q} max_{(a, q) = 1} |psi(x; q, a) - x / phi(q)|.
inline double bv_sum(std::int64_t x, std::int64_t Q, const FactorSieve& sieve) {
    require_arg(Q >= 1, "bv_sum: Q must be >= 1");
    require_arg(x <= sieve.limit(), "bv_sum: x exceeds sieve limit");
    struct Term {
        std::int64_t n;
        double w;
    };
    std::vector<Term> prime_powers;
    for (std::int64_t p : sieve.primes()) {
        if (p > x) break;
        const double lp = std::log(static_cast<double>(p));
        for (std::int64_t m = p; m <= x; m *= p) {
            prime_powers.push_back({m, lp});
            if (m > x / p) break;
        }
    }
    NeumaierSum total;
    std::vector<NeumaierSum> bucket;
    for (std::int64_t q = 1; q <= Q; ++q) {
        bucket.assign(static_cast<std::size_t>(q), NeumaierSum{});
        for (const auto& t : prime_powers) bucket[t.n % q].add(t.w);
        const double expect = static_cast<double>(x) / static_cast<double>(euler_phi(q, sieve));
        double worst = 0.0;
        for (std::int64_t a = 0; a < q; ++a)
            if (std::gcd(a, q) == 1) worst = std::max(worst, std::fabs(bucket[a].value() - expect));
        total.add(worst);
    }
    return total.value();
}

} // namespace divisum
