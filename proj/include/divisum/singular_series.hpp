#pragma once

// Singular series: the constants C_2, C_3, D_j, the one-variable series
// S_j(n) for j <= 3 in exact form, the Hardy-Littlewood product S(j) for a
// shift vector, and the reductions of the r = 2, 3 products to S_2 and S_3.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "divisum/arith.hpp"
#include "divisum/errors.hpp"
#include "divisum/summation.hpp"

namespace divisum {

using Rational = boost::multiprecision::cpp_rational;

// Sum over primes p > L of 1/p^2, estimated by the integral of
// 1/(t^2 log t) from L, i.e. E1(log L).
inline double prime_square_tail(std::int64_t L) {
    return -std::expint(-std::log(static_cast<double>(L)));
}

// A truncated prime product or prime sum, its tail-corrected value and a
// bound on the truncated tail.
struct PrimeTruncation {
    double value = 0.0;
    double truncated = 0.0;
    double tail_bound = 0.0;
    std::int64_t prime_limit = 0;
};

// C_j = prod_{p != j-1, j} (1 - (j-1)/((p-1)(p-j+1))) for j in {2, 3}.
inline PrimeTruncation c_constant_detail(int j, std::int64_t prime_limit, const FactorSieve& sieve) {
    if (j != 2 && j != 3) throw unsupported_error("C_j is only provided for j in {2, 3}");
    require(prime_limit >= 1000, "C_j needs prime_limit >= 1000");
    require_arg(prime_limit <= sieve.limit(), "prime_limit exceeds sieve limit");
    NeumaierSum s;
    for (std::int64_t p : sieve.primes()) {
        if (p > prime_limit) break;
        if (p == j - 1 || p == j) continue;
        const double pd = static_cast<double>(p);
        s.add(std::log1p(-(j - 1) / ((pd - 1.0) * (pd - j + 1.0))));
    }
    const double L = static_cast<double>(prime_limit);
    PrimeTruncation out;
    out.prime_limit = prime_limit;
    out.truncated = std::exp(s.value());
    out.value = std::exp(s.value() - (j - 1) * prime_square_tail(prime_limit));
    out.tail_bound = (j - 1) / (L * std::log(L));
    return out;
}

inline double c_constant(int j, std::int64_t prime_limit, const FactorSieve& sieve) {
    return c_constant_detail(j, prime_limit, sieve).value;
}

// D_j = gamma + sum_{p != j-1} (2-j) log p / ((p-j+1)(p-1)) for j in {1, 2, 3}.
// The tail beyond L is log p / p^2 to leading order, which sums to about 1/L.
inline PrimeTruncation d_constant_detail(int j, std::int64_t prime_limit, const FactorSieve& sieve) {
    if (j < 1 || j > 3) throw unsupported_error("D_j is only provided for j in {1, 2, 3}");
    require_arg(prime_limit >= 2 && prime_limit <= sieve.limit(), "prime_limit outside sieve range");
    NeumaierSum s;
    s.add(std::numbers::egamma_v<double>);
    if (j != 2) {
        for (std::int64_t p : sieve.primes()) {
            if (p > prime_limit) break;
            if (p == j - 1) continue;
            const double pd = static_cast<double>(p);
            s.add((2 - j) * std::log(pd) / ((pd - j + 1.0) * (pd - 1.0)));
        }
    }
    const double L = static_cast<double>(prime_limit);
    PrimeTruncation out;
    out.prime_limit = prime_limit;
    out.truncated = s.value();
    out.value = s.value() + (2 - j) / L;
    out.tail_bound = 2.0 * std::abs(2 - j) / L;
    return out;
}

inline double d_constant(int j, std::int64_t prime_limit, const FactorSieve& sieve) {
    return d_constant_detail(j, prime_limit, sieve).value;
}

struct ConstantsTable {
    double c2 = 0.0;
    double c3 = 0.0;
    double gamma = std::numbers::egamma_v<double>;
    double d[4] = {0.0, 0.0, 0.0, 0.0}; // d[1..3]
    std::int64_t prime_limit = 0;
    double c2_tail_bound = 0.0;
    double c3_tail_bound = 0.0;
    double d_tail_bound[4] = {0.0, 0.0, 0.0, 0.0};

    static ConstantsTable build(const FactorSieve& sieve, std::int64_t prime_limit) {
        ConstantsTable t;
        t.prime_limit = prime_limit;
        const auto c2 = c_constant_detail(2, prime_limit, sieve);
        const auto c3 = c_constant_detail(3, prime_limit, sieve);
        t.c2 = c2.value;
        t.c3 = c3.value;
        t.c2_tail_bound = c2.tail_bound;
        t.c3_tail_bound = c3.tail_bound;
        for (int j = 1; j <= 3; ++j) {
            const auto dj = d_constant_detail(j, prime_limit, sieve);
            t.d[j] = dj.value;
            t.d_tail_bound[j] = dj.tail_bound;
        }
        return t;
    }

    double c(int j) const {
        switch (j) {
        case 1: return 1.0;
        case 2: return c2;
        case 3: return c3;
        default: throw unsupported_error("C_j is only provided for j <= 3");
        }
    }

    double d_j(int j) const {
        if (j < 1 || j > 3) throw unsupported_error("D_j is only provided for j in {1, 2, 3}");
        return d[j];
    }
};

// q * C2^c2_pow * C3^c3_pow with exact rational q; q == 0 is the zero series
// whatever the exponents.
struct SeriesExact {
    Rational q{0};
    int c2_pow = 0;
    int c3_pow = 0;

    static SeriesExact zero() { return {}; }
    static SeriesExact of(Rational q, int c2 = 0, int c3 = 0) {
        SeriesExact s;
        s.q = std::move(q);
        s.c2_pow = c2;
        s.c3_pow = c3;
        s.normalize();
        return s;
    }

    bool is_zero() const { return q == 0; }

    void normalize() {
        if (q == 0) c2_pow = c3_pow = 0;
    }

    friend bool operator==(const SeriesExact& a, const SeriesExact& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        return a.q == b.q && a.c2_pow == b.c2_pow && a.c3_pow == b.c3_pow;
    }

    // Only values sharing the same constant monomial can be added exactly.
    SeriesExact& operator+=(const SeriesExact& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        if (c2_pow != o.c2_pow || c3_pow != o.c3_pow)
            throw unsupported_error("cannot add singular series with different constant monomials");
        q += o.q;
        normalize();
        return *this;
    }

    friend SeriesExact operator*(const SeriesExact& a, const SeriesExact& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        const int c2 = a.c2_pow + b.c2_pow;
        const int c3 = a.c3_pow + b.c3_pow;
        if (c2 > 1 || c3 > 1) throw unsupported_error("constant exponents above 1 are not representable");
        return of(a.q * b.q, c2, c3);
    }

    SeriesExact scaled(const Rational& f) const { return of(q * f, c2_pow, c3_pow); }

    double value(const ConstantsTable& t) const {
        if (is_zero()) return 0.0;
        double v = q.convert_to<double>();
        if (c2_pow) v *= t.c2;
        if (c3_pow) v *= t.c3;
        return v;
    }

    // "0", "5/2", "4*C2", "6*C2*C3".
    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        os << q;
        if (c2_pow) os << "*C2";
        if (c3_pow) os << "*C3";
        return os.str();
    }
};

namespace detail {

inline void check_series_index(int j) {
    if (j < 1 || j > 3) throw unsupported_error("S_j(n) is only provided for j in {1, 2, 3}");
}

inline bool contains(std::span<const std::int64_t> sorted, std::int64_t p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
}

inline std::vector<std::int64_t> merge_supports(std::initializer_list<std::vector<std::int64_t>> parts) {
    std::vector<std::int64_t> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

// S_j(n) from the sorted distinct primes of n: C_j G_j(n) H_j(n) when
// p(j) | n, zero otherwise. Primes p in {j-1, j} contribute p/(p-1) (G_j);
// the others (p-j+1)/(p-j) (H_j).
inline SeriesExact sseries_j_support(std::span<const std::int64_t> primes, int j) {
    detail::check_series_index(j);
    const std::int64_t pj = p_of(j);
    if (pj > 1 && !detail::contains(primes, pj)) return SeriesExact::zero();
    Rational q{1};
    for (std::int64_t p : primes) {
        if (p == j - 1 || p == j)
            q *= Rational(p, p - 1);
        else
            q *= Rational(p - j + 1, p - j);
    }
    return SeriesExact::of(q, j == 2 ? 1 : 0, j == 3 ? 1 : 0);
}

// Float evaluation of the same product, no rationals.
inline double sseries_j_value(std::span<const std::int64_t> primes, int j, const ConstantsTable& t) {
    detail::check_series_index(j);
    const std::int64_t pj = p_of(j);
    if (pj > 1 && !detail::contains(primes, pj)) return 0.0;
    double v = t.c(j);
    for (std::int64_t p : primes) {
        const auto pd = static_cast<double>(p);
        v *= (p == j - 1 || p == j) ? pd / (pd - 1.0) : (pd - j + 1.0) / (pd - j);
    }
    return v;
}

inline SeriesExact sseries_j(std::int64_t n, int j, const FactorSieve& sieve) {
    require_arg(n != 0, "S_j(n) requires n != 0");
    detail::check_series_index(j);
    const auto support = prime_support(n, sieve);
    return sseries_j_support(support, j);
}

inline double sseries_j_float(std::int64_t n, int j, const FactorSieve& sieve, const ConstantsTable& t) {
    require_arg(n != 0, "S_j(n) requires n != 0");
    const auto support = prime_support(n, sieve);
    return sseries_j_value(support, j, t);
}

inline void require_distinct(std::span<const std::int64_t> jvec) {
    require_arg(!jvec.empty(), "shift vector is empty");
    std::vector<std::int64_t> s(jvec.begin(), jvec.end());
    std::sort(s.begin(), s.end());
    require_arg(std::adjacent_find(s.begin(), s.end()) == s.end(), "shift vector entries must be distinct");
}

// Number of distinct residue classes mod p occupied by jvec.
inline int nu_p(std::span<const std::int64_t> jvec, std::int64_t p) {
    require_distinct(jvec);
    require_arg(p >= 2, "nu_p needs a prime p");
    std::vector<std::int64_t> res;
    res.reserve(jvec.size());
    for (std::int64_t j : jvec) res.push_back(((j % p) + p) % p);
    std::sort(res.begin(), res.end());
    return static_cast<int>(std::unique(res.begin(), res.end()) - res.begin());
}

struct SeriesFloat {
    double value = 0.0;
    double truncated = 0.0;
    double tail_bound = 0.0;
};

// S(j) = prod_p (1 - 1/p)^{-r} (1 - nu_p/p) over p <= prime_limit, with the
// generic tail (nu_p = r) beyond prime_limit folded in as
// exp(-r(r-1)/2 * sum_{p > L} 1/p^2).
inline SeriesFloat sseries_vec(std::span<const std::int64_t> jvec, std::int64_t prime_limit,
                               const FactorSieve& sieve) {
    require_distinct(jvec);
    require_arg(prime_limit >= 2 && prime_limit <= sieve.limit(), "prime_limit outside sieve range");
    const auto r = static_cast<std::int64_t>(jvec.size());
    if (r == 1) return {1.0, 1.0, 0.0};
    const auto [lo, hi] = std::minmax_element(jvec.begin(), jvec.end());
    const std::int64_t spread = *hi - *lo;
    require(prime_limit >= spread, "prime_limit must cover the spread of the shift vector");
    const double rd = static_cast<double>(r);
    NeumaierSum s;
    for (std::int64_t p : sieve.primes()) {
        if (p > prime_limit) break;
        const auto pd = static_cast<double>(p);
        const std::int64_t nu = (p > spread) ? r : nu_p(jvec, p);
        if (nu == p) return {0.0, 0.0, 0.0};
        s.add(-rd * std::log1p(-1.0 / pd) + std::log1p(-static_cast<double>(nu) / pd));
    }
    const double pairs = rd * (rd - 1.0) / 2.0;
    const double L = static_cast<double>(prime_limit);
    SeriesFloat out;
    out.truncated = std::exp(s.value());
    out.value = std::exp(s.value() - pairs * prime_square_tail(prime_limit));
    out.tail_bound = pairs / (L * std::log(L));
    return out;
}

// Exact S(j) for r <= 3 after shifting j_1 to 0: r = 2 gives S_2(k);
// r = 3 gives S_2(kappa) S_3(Delta) with kappa = (k1, k2),
// Delta = k1 k2 (k2 - k1).
inline SeriesExact sseries_vec_exact(std::span<const std::int64_t> jvec, const FactorSieve& sieve) {
    require_distinct(jvec);
    if (jvec.size() > 3) throw unsupported_error("exact S(j) is only provided for r <= 3");
    if (jvec.size() == 1) return SeriesExact::of(1);
    const std::int64_t k1 = jvec[1] - jvec[0];
    if (jvec.size() == 2) return sseries_j(k1, 2, sieve);
    const std::int64_t k2 = jvec[2] - jvec[0];
    const std::int64_t kappa = std::gcd(k1, k2);
    const auto delta_support = detail::merge_supports(
        {prime_support(k1, sieve), prime_support(k2, sieve), prime_support(k2 - k1, sieve)});
    return sseries_j(kappa, 2, sieve) * sseries_j_support(delta_support, 3);
}

// Float S(j) by the exact reduction (r <= 3), cheap enough for bulk averages.
inline double sseries_vec_reduced(std::span<const std::int64_t> jvec, const FactorSieve& sieve,
                                  const ConstantsTable& t) {
    return sseries_vec_exact(jvec, sieve).value(t);
}

// h_j(k) = sum_{p | k} log p/(p-1) - sum_{p | k, p != j-1} (2-j) log p/((p-j+1)(p-1)).
inline double h_j_support(std::span<const std::int64_t> primes, int j) {
    detail::check_series_index(j);
    NeumaierSum s;
    for (std::int64_t p : primes) {
        const auto pd = static_cast<double>(p);
        const double lp = std::log(pd);
        s.add(lp / (pd - 1.0));
        if (p != j - 1 && j != 2) s.add(-(2 - j) * lp / ((pd - j + 1.0) * (pd - 1.0)));
    }
    return s.value();
}

inline double h_j_of(std::int64_t k, int j, const FactorSieve& sieve) {
    require_arg(k >= 1, "h_j(k) needs k >= 1");
    const auto support = prime_support(k, sieve);
    return h_j_support(support, j);
}

} // namespace divisum
