#pragma once

// Independent reference implementations used by the unit tests and the
// acceptance runner. Each one follows its definition literally, with no batch
// arrays, pruning or factorization shortcuts beyond the sieve itself.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "test_fixtures.hpp"

namespace fixtures::naive {

using namespace divisum;
// Naive Lambda_R straight from the divisor list.
inline double naive_lambda_r(std::int64_t n, double R, const FactorSieve& s) {
    double v = 0.0;
    for (std::int64_t d : divisors(n, s))
        if (static_cast<double>(d) <= R + 1e-9) v += moebius(d, s) * std::log(R / static_cast<double>(d));
    return v;
}

// Naive lambda_R: the inner sum over d | (r, n) taken literally.
inline double naive_lambda_lower(std::int64_t n, double R, const FactorSieve& s) {
    double v = 0.0;
    for (std::int64_t r = 1; r <= static_cast<std::int64_t>(R + 1e-9); ++r) {
        const int mur = moebius(r, s);
        if (mur == 0) continue;
        double inner = 0.0;
        for (std::int64_t d : divisors(std::gcd(r, n), s)) inner += static_cast<double>(d) * moebius(d, s);
        v += inner / static_cast<double>(euler_phi(r, s));
    }
    return v;
}


inline CorrelationSpec make(std::vector<std::int64_t> shifts, std::vector<int> powers, bool mixed = false,
                     ApproxKind kind = ApproxKind::LambdaR) {
    CorrelationSpec c;
    c.shifts = std::move(shifts);
    c.powers = std::move(powers);
    c.mixed = mixed;
    c.approx = kind;
    return c;
}

// Point-by-point correlation with no batch arrays.
inline double naive_corr(std::int64_t N, const CorrelationSpec& c, double R) {
    const auto& s = sieve_1e6();
    double v = 0.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        double term = 1.0;
        for (std::size_t i = 0; i < c.shifts.size(); ++i) {
            const std::int64_t m = n + c.shifts[i];
            double f = 0.0;
            if (c.mixed && i + 1 == c.shifts.size())
                f = m >= 1 ? von_mangoldt(m, s) : 0.0;
            else
                f = c.approx == ApproxKind::LambdaR ? lambda_r_point(m, R, s) : lambda_lower_r_point(m, R, s);
            term *= std::pow(f, c.powers[i]);
        }
        v += term;
    }
    return v;
}

// W_R over all pairs d1, d2 <= R straight from the definition.
inline double naive_w2(double R, std::int64_t j1, std::int64_t j2) {
    const auto& s = sieve_1e6();
    const auto D = static_cast<std::int64_t>(R + 1e-9);
    double v = 0.0;
    for (std::int64_t d1 = 1; d1 <= D; ++d1) {
        const int m1 = moebius(d1, s);
        if (m1 == 0 || std::gcd(d1, j1) != 1) continue;
        for (std::int64_t d2 = 1; d2 <= D; ++d2) {
            const int m2 = moebius(d2, s);
            if (m2 == 0 || std::gcd(d2, j2) != 1) continue;
            if ((j2 - j1) % std::gcd(d1, d2) != 0) continue;
            const std::int64_t l = std::lcm(d1, d2);
            v += m1 * m2 * std::log(R / d1) * std::log(R / d2) / static_cast<double>(euler_phi(l, s));
        }
    }
    return v;
}


// Stirling numbers by inclusion-exclusion: {k r} = (1/r!) sum_i (-1)^i C(r,i) (r-i)^k.
inline long double stirling_explicit(int k, int r) {
    long double total = 0, binom = 1, fact = 1;
    for (int i = 1; i <= r; ++i) fact *= i;
    for (int i = 0; i <= r; ++i) {
        total += (i % 2 ? -1 : 1) * binom * std::pow(static_cast<long double>(r - i), k);
        binom = binom * (r - i) / (i + 1);
    }
    return total / fact;
}

inline MomentParams params(std::int64_t N, std::int64_t h, int k, MomentSource src, double R = 1.0, double C = 0.0,
                    bool primed = false) {
    MomentParams p;
    p.N = N;
    p.h = h;
    p.k = k;
    p.source = src;
    p.R = R;
    p.C = C;
    p.primed = primed;
    return p;
}

// Window sums recomputed from scratch for every n.
inline double naive_moment(const MomentParams& p) {
    const auto& s = sieve_1e6();
    const double sh = p.C * std::log(static_cast<double>(p.N));
    const std::int64_t lo = p.primed ? p.N + 1 : 1, hi = p.primed ? 2 * p.N : p.N;
    double v = 0.0;
    for (std::int64_t n = lo; n <= hi; ++n) {
        double x = 0.0, y = 0.0;
        for (std::int64_t m = n + 1; m <= n + p.h; ++m) {
            x += von_mangoldt(m, s);
            y += lambda_r_point(m, p.R, s);
        }
        switch (p.source) {
        case MomentSource::Psi: v += std::pow(x - sh, p.k); break;
        case MomentSource::PsiR: v += std::pow(y - sh, p.k); break;
        case MomentSource::Mixed: v += x * std::pow(y - sh, p.k - 1); break;
        }
    }
    return v;
}


enum class Weight { Mu, MuSquared };

// Straight double loop: d over [1, R], gcd and squarefree tests from scratch,
// S_{j+1}(dk) from a fresh exact evaluation when requested.
inline double naive_sum(double R, std::int64_t k, int j, Weight w, bool with_log, int series_j) {
    const auto& s = sieve_1e6();
    const auto& t = consts_1e6();
    double v = 0.0;
    for (std::int64_t d = 1; static_cast<double>(d) <= R + 1e-9; ++d) {
        const int mu = moebius(d, s);
        if (mu == 0 || std::gcd(d, k) != 1) continue;
        double term = (w == Weight::Mu ? mu : 1) / static_cast<double>(phi_j(d, j, s));
        if (series_j) term *= sseries_j(d * k, series_j, s).value(t);
        if (with_log) term *= std::log(R / static_cast<double>(d));
        v += term;
    }
    return v;
}

// Independent exact S(j) for r in {2, 3}: the local Euler factors
// L_p = (1 - nu_p/p)(1 - 1/p)^{-r} are taken literally at every prime that
// divides some difference, and the generic factors g_p (nu_p = r) are pulled
// out as the constant. prod_{p>2} g2_p = C2 and prod_{p>3} g3_p = (4/3) C2 C3
// because C3's local factor is g3_p / g2_p and C2 carries p = 3 as 3/4.
inline SeriesExact local_factor_series(const std::vector<std::int64_t>& jvec, const FactorSieve& s) {
    const auto r = static_cast<std::int64_t>(jvec.size());
    std::vector<std::int64_t> primes{2, 3};
    for (std::size_t a = 0; a < jvec.size(); ++a)
        for (std::size_t b = a + 1; b < jvec.size(); ++b)
            for (auto p : prime_support(jvec[b] - jvec[a], s)) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    const std::int64_t generic_from = r == 2 ? 3 : 5;
    Rational q = r == 2 ? Rational(1) : Rational(4, 3);
    for (std::int64_t p : primes) {
        const std::int64_t nu = nu_p(jvec, p);
        if (nu == p) return SeriesExact::zero();
        Rational local = Rational(p - nu, p);
        for (int i = 0; i < r; ++i) local *= Rational(p, p - 1);
        if (p >= generic_from) {
            Rational generic = Rational(p - r, p);
            for (int i = 0; i < r; ++i) generic *= Rational(p, p - 1);
            local /= generic;
        }
        q *= local;
    }
    return SeriesExact::of(q, 1, r == 3 ? 1 : 0);
}

} // namespace fixtures::naive
