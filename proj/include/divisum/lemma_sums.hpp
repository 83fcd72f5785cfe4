#pragma once

// Finite divisor sums over d <= R, (d, k) = 1 weighted by mu(d)/phi_j(d) or
// mu^2(d)/phi_j(d), with their predicted main terms and residuals.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divisum/arith.hpp"
#include "divisum/divisor_approx.hpp"
#include "divisum/errors.hpp"
#include "divisum/singular_series.hpp"
#include "divisum/summation.hpp"

namespace divisum {

struct Lemma1Result {
    double lhs = 0.0;
    double main = 0.0;
    double residual = 0.0;
};

struct Lemma2Result {
    double lhs = 0.0;
    double main = 0.0;
    double scaled_residual = 0.0; // (lhs - main) sqrt(R) / m(k)
};

struct Lemma2LogResult {
    double lhs = 0.0;
    double main_without_E = 0.0;
    double empirical_E = 0.0;
};

struct Lemma3Result {
    double lhs = 0.0;
    std::optional<double> main; // empty when the main term needs S_4
};

struct Lemma4Exact {
    SeriesExact lhs;
    SeriesExact rhs;
    bool equal() const { return lhs == rhs; }
};

struct Lemma4Truncated {
    double lhs = 0.0;
    double main = 0.0;
};

namespace detail {

// One squarefree d coprime to k: mu(d), phi_j(d) and its distinct primes.
struct CoprimeTerm {
    std::int64_t d;
    int mu;
    double phi_j;
    std::vector<std::int64_t> primes;
};

// Visits squarefree d <= R with (d, k) = 1 in ascending order.
template <class Fn>
void for_each_coprime_squarefree(double R, std::int64_t k, std::int64_t j, const FactorSieve& sieve, Fn&& fn) {
    const std::int64_t D = divisor_cutoff(R);
    require_arg(D <= sieve.limit(), "cutoff R exceeds sieve limit");
    CoprimeTerm t;
    t.primes.reserve(16);
    for (std::int64_t d = 1; d <= D; ++d) {
        if (std::gcd(d, k) != 1) continue;
        std::int64_t n = d;
        bool squarefree = true;
        t.d = d;
        t.mu = 1;
        t.phi_j = 1.0;
        t.primes.clear();
        while (n > 1) {
            const std::int64_t p = sieve.spf(n);
            n /= p;
            if (n % p == 0) {
                squarefree = false;
                break;
            }
            t.mu = -t.mu;
            t.phi_j *= static_cast<double>(p - j);
            t.primes.push_back(p);
        }
        if (squarefree) fn(static_cast<const CoprimeTerm&>(t));
    }
}

inline void check_lemma_args(double R, std::int64_t k, int j, int jmin, int jmax) {
    require_arg(R >= 1.0, "R must be >= 1");
    require_arg(k >= 1, "k must be >= 1");
    if (j < jmin || j > jmax)
        throw unsupported_error("j = " + std::to_string(j) + " outside supported range [" +
                                std::to_string(jmin) + ", " + std::to_string(jmax) + "]");
    require(k % p_of(j) == 0, "p(j) must divide k (p(" + std::to_string(j) + ") = " +
                                  std::to_string(p_of(j)) + ", k = " + std::to_string(k) + ")");
}

// S_J(d k) for (d, k) = 1, from precomputed S_J-factor of k.
struct SeriesOfProduct {
    int J;
    std::int64_t PJ;     // p(J)
    bool k_has_pj;       // p(J) | k
    double k_part;       // C_J prod_{p | k} g_J(p)

    SeriesOfProduct(int J_, std::int64_t k, const FactorSieve& sieve, const ConstantsTable& t) : J(J_), PJ(p_of(J_)) {
        const auto support = prime_support(k, sieve);
        k_has_pj = PJ == 1 || std::binary_search(support.begin(), support.end(), PJ);
        k_part = t.c(J);
        for (std::int64_t p : support) k_part *= factor(p);
    }

    double factor(std::int64_t p) const {
        const auto pd = static_cast<double>(p);
        return (p == J - 1 || p == J) ? pd / (pd - 1.0) : (pd - J + 1.0) / (pd - J);
    }

    double operator()(const std::vector<std::int64_t>& d_primes) const {
        bool has = k_has_pj;
        double v = k_part;
        for (std::int64_t p : d_primes) {
            if (p == PJ) has = true;
            v *= factor(p);
        }
        return has ? v : 0.0;
    }
};

} // namespace detail

// sum_{d <= R, (d,k)=1} mu(d)/phi_j(d) log(R/d), against S_{j+1}(k).
inline Lemma1Result lemma1_sum(double R, std::int64_t k, int j, const FactorSieve& sieve,
                               const ConstantsTable& consts) {
    detail::check_lemma_args(R, k, j, 0, 2);
    const double logR = std::log(R);
    NeumaierSum s;
    detail::for_each_coprime_squarefree(R, k, j, sieve, [&](const detail::CoprimeTerm& t) {
        s.add(t.mu / t.phi_j * (logR - std::log(static_cast<double>(t.d))));
    });
    Lemma1Result out;
    out.lhs = s.value();
    out.main = sseries_j_float(k, j + 1, sieve, consts);
    out.residual = out.lhs - out.main;
    return out;
}

// sum_{d <= R, (d,k)=1} mu(d)/phi_j(d); tends to 0.
inline double lemma1_plain(double R, std::int64_t k, int j, const FactorSieve& sieve) {
    detail::check_lemma_args(R, k, j, 0, 2);
    NeumaierSum s;
    detail::for_each_coprime_squarefree(R, k, j, sieve,
                                        [&](const detail::CoprimeTerm& t) { s.add(t.mu / t.phi_j); });
    return s.value();
}

// sum_{d <= R, (d,k)=1} mu^2(d)/phi_j(d) against (log R + D_j + h_j(k)) / S_j(k)
// when p(j-1) | k, and against 0 otherwise.
inline Lemma2Result lemma2_sum(double R, std::int64_t k, int j, const FactorSieve& sieve,
                               const ConstantsTable& consts) {
    detail::check_lemma_args(R, k, j, 1, 3);
    NeumaierSum s;
    detail::for_each_coprime_squarefree(R, k, j, sieve,
                                        [&](const detail::CoprimeTerm& t) { s.add(1.0 / t.phi_j); });
    Lemma2Result out;
    out.lhs = s.value();
    if (k % p_of(j - 1) == 0) {
        const double series = sseries_j_float(k, j, sieve, consts);
        out.main = (std::log(R) + consts.d_j(j) + h_j_of(k, j, sieve)) / series;
    }
    out.scaled_residual = (out.lhs - out.main) * std::sqrt(R) / m_of(k, sieve);
    return out;
}

// sum_{d <= R, (d,k)=1} mu^2(d)/phi_j(d) log(R/d). In the p(j-1) | k branch
// the residual after removing (log^2 R / 2 + (D_j + h_j(k)) log R) / S_j(k)
// is E_j(k) / S_j(k); empirical_E undoes the 1/S_j(k) scaling.
inline Lemma2LogResult lemma2_log_sum(double R, std::int64_t k, int j, const FactorSieve& sieve,
                                      const ConstantsTable& consts) {
    detail::check_lemma_args(R, k, j, 1, 3);
    const double logR = std::log(R);
    NeumaierSum s;
    detail::for_each_coprime_squarefree(R, k, j, sieve, [&](const detail::CoprimeTerm& t) {
        s.add((logR - std::log(static_cast<double>(t.d))) / t.phi_j);
    });
    Lemma2LogResult out;
    out.lhs = s.value();
    if (k % p_of(j - 1) == 0) {
        const double series = sseries_j_float(k, j, sieve, consts);
        out.main_without_E = (0.5 * logR * logR + (consts.d_j(j) + h_j_of(k, j, sieve)) * logR) / series;
        out.empirical_E = series * (out.lhs - out.main_without_E);
    } else {
        out.empirical_E = out.lhs;
    }
    return out;
}

// sum_{d <= R, (d,k)=1} mu(d)/phi_j(d) S_{j+1}(dk) log(R/d), against
// mu(P) mu((k,P)) S_{j+1}(kP) S_{j+2}(kP) with P = p(j+1).
inline Lemma3Result lemma3_sum(double R, std::int64_t k, int j, const FactorSieve& sieve,
                               const ConstantsTable& consts) {
    detail::check_lemma_args(R, k, j, 1, 2);
    const double logR = std::log(R);
    const detail::SeriesOfProduct series(j + 1, k, sieve, consts);
    NeumaierSum s;
    detail::for_each_coprime_squarefree(R, k, j, sieve, [&](const detail::CoprimeTerm& t) {
        const double sv = series(t.primes);
        if (sv != 0.0) s.add(t.mu / t.phi_j * sv * (logR - std::log(static_cast<double>(t.d))));
    });
    Lemma3Result out;
    out.lhs = s.value();
    if (j + 2 <= 3) {
        const std::int64_t P = p_of(j + 1);
        const double sign = static_cast<double>((P == 1 ? 1 : -1) * (std::gcd(k, P) == 1 ? 1 : -1));
        out.main = sign * sseries_j_float(k * P, j + 1, sieve, consts) * sseries_j_float(k * P, j + 2, sieve, consts);
    }
    return out;
}

// sum_{d | r, (d,k)=1} mu^2(d)/phi_j(d) S_{j+1}(dk) and S_{j+1}(rk), exactly.
inline Lemma4Exact lemma4_exact(std::int64_t r, std::int64_t k, int j, const FactorSieve& sieve) {
    detail::check_lemma_args(1.0, k, j, 1, 2);
    require_arg(r >= 1 && is_squarefree(r, sieve), "lemma4_exact needs squarefree r >= 1");
    const auto k_support = prime_support(k, sieve);
    Lemma4Exact out;
    for (const auto& [d, mu] : squarefree_divisors(r, sieve)) {
        (void)mu;
        if (std::gcd(d, k) != 1) continue;
        const auto d_support = prime_support(d, sieve);
        std::int64_t phi = 1;
        for (std::int64_t p : d_support) phi *= p - j;
        const auto dk = detail::merge_supports({d_support, k_support});
        out.lhs += sseries_j_support(dk, j + 1).scaled(Rational(1, phi));
    }
    out.rhs = sseries_j_support(detail::merge_supports({prime_support(r, sieve), k_support}), j + 1);
    return out;
}

// sum_{d <= R, (d,k)=1} mu^2(d)/phi_j(d) S_{j+1}(dk) against
// log(R (k,P)/P) + D_{j+1} + h_{j+1}(kP), P = p(j+1).
inline Lemma4Truncated lemma4_truncated(double R, std::int64_t k, int j, const FactorSieve& sieve,
                                        const ConstantsTable& consts) {
    detail::check_lemma_args(R, k, j, 1, 2);
    const detail::SeriesOfProduct series(j + 1, k, sieve, consts);
    NeumaierSum s;
    detail::for_each_coprime_squarefree(R, k, j, sieve, [&](const detail::CoprimeTerm& t) {
        const double sv = series(t.primes);
        if (sv != 0.0) s.add(sv / t.phi_j);
    });
    const std::int64_t P = p_of(j + 1);
    Lemma4Truncated out;
    out.lhs = s.value();
    out.main = std::log(R * static_cast<double>(std::gcd(k, P)) / static_cast<double>(P)) + consts.d_j(j + 1) +
               h_j_of(k * P, j + 1, sieve);
    return out;
}

} // namespace divisum
