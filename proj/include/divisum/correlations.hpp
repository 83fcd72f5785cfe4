#pragma once

// Correlation sums of Lambda_R (or lambda_R) over shifted arguments, their
// predicted main terms, the W_R divisor double sum, and the divisor-triple
// decomposition of the three-point correlation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "divisum/arith.hpp"
#include "divisum/divisor_approx.hpp"
#include "divisum/errors.hpp"
#include "divisum/lemma_sums.hpp"
#include "divisum/singular_series.hpp"
#include "divisum/summation.hpp"

namespace divisum {

struct CorrelationSpec {
    std::vector<std::int64_t> shifts;
    std::vector<int> powers;
    bool mixed = false; // last factor is Lambda(n + j_r) itself
    ApproxKind approx = ApproxKind::LambdaR;

    int k() const { return std::accumulate(powers.begin(), powers.end(), 0); }
    int r() const { return static_cast<int>(shifts.size()); }

    std::int64_t max_shift() const { return shifts.empty() ? 0 : *std::max_element(shifts.begin(), shifts.end()); }

    void validate() const {
        require_arg(!shifts.empty(), "correlation needs at least one shift");
        require_arg(shifts.size() == powers.size(), "shifts and powers must have the same length");
        require_distinct(shifts);
        for (int a : powers) require_arg(a >= 1, "powers must be >= 1");
        require_arg(approx != ApproxKind::VonMangoldt, "approximant must be LambdaR or LambdaLowerR");
        if (mixed) {
            require_arg(shifts.size() >= 2, "mixed correlation needs r >= 2");
            require_arg(powers.back() == 1, "mixed correlation needs a_r = 1");
        }
    }
};

namespace detail {

inline double ipow(double x, int a) {
    double v = 1.0;
    for (int i = 0; i < a; ++i) v *= x;
    return v;
}

inline std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

} // namespace detail

// Sum over n = 1..N of prod_i f(n + j_i)^{a_i}, reading values from arrays
// that cover [1, N + max j]. vm supplies Lambda for the mixed factor.
inline double brute_corr_from(std::int64_t N, const CorrelationSpec& spec, const ApproxArray& f,
                              const ApproxArray* vm = nullptr, unsigned threads = 0) {
    spec.validate();
    require_arg(N >= 0, "N must be >= 0");
    if (N == 0) return 0.0;
    const std::int64_t top = N + std::max<std::int64_t>(0, spec.max_shift());
    require_arg(f.start() == 1 && f.end() > top, "approximant array does not cover the shifted range");
    if (spec.mixed) {
        require_arg(vm != nullptr, "mixed correlation needs a Lambda array");
        require_arg(vm->start() == 1 && vm->end() > top, "Lambda array does not cover the shifted range");
    }
    const auto fv = f.values();
    const std::span<const double> lv = vm ? vm->values() : std::span<const double>{};
    const std::size_t r = spec.shifts.size();
    const std::size_t pure = spec.mixed ? r - 1 : r;
    return segmented_sum(1, N + 1, threads, [&](std::int64_t n) {
        double v = 1.0;
        for (std::size_t i = 0; i < pure; ++i) {
            const std::int64_t m = n + spec.shifts[i];
            if (m <= 0) return 0.0;
            v *= detail::ipow(fv[static_cast<std::size_t>(m - 1)], spec.powers[i]);
        }
        if (spec.mixed) {
            const std::int64_t m = n + spec.shifts.back();
            if (m <= 0) return 0.0;
            v *= lv[static_cast<std::size_t>(m - 1)];
        }
        return v;
    });
}

inline double brute_corr(std::int64_t N, const CorrelationSpec& spec, double R, const FactorSieve& sieve,
                         unsigned threads = 0) {
    spec.validate();
    require_arg(N >= 0, "N must be >= 0");
    if (N == 0) return 0.0;
    const std::int64_t top = N + std::max<std::int64_t>(0, spec.max_shift());
    require_arg(top <= sieve.limit(), "N + max shift exceeds sieve limit");
    const auto f = batch(spec.approx, 1, top + 1, R, sieve, threads);
    if (!spec.mixed) return brute_corr_from(N, spec, f, nullptr, threads);
    const auto vm = batch(ApproxKind::VonMangoldt, 1, top + 1, R, sieve, threads);
    return brute_corr_from(N, spec, f, &vm, threads);
}

// Leading constant for a power pattern a (order irrelevant).
inline Rational corr_constant(std::vector<int> a) {
    require_arg(!a.empty(), "empty power pattern");
    std::sort(a.begin(), a.end(), std::greater<>());
    const int k = std::accumulate(a.begin(), a.end(), 0);
    const auto is = [&](std::initializer_list<int> v) { return std::equal(a.begin(), a.end(), v.begin(), v.end()); };
    if (k <= 2) return Rational(1);
    if (k == 3) return is({3}) ? Rational(3, 4) : Rational(1);
    if (a.size() == 1) {
        if (k == 4) return Rational(3, 4);
        if (k == 5) return Rational(11065, std::int64_t{1} << 14);
        if (k == 6) return Rational(11460578803LL, std::int64_t{1} << 34);
    }
    std::string pat;
    for (int x : a) pat += (pat.empty() ? "" : ",") + std::to_string(x);
    throw unsupported_error("leading constant unknown for power pattern (" + pat + ")");
}

// S(j) for a correlation's shift vector, exact where the reduction exists.
inline double shift_series(const std::vector<std::int64_t>& shifts, const FactorSieve& sieve,
                           const ConstantsTable& consts) {
    if (shifts.size() <= 3) return sseries_vec_reduced(shifts, sieve, consts);
    return sseries_vec(shifts, consts.prime_limit, sieve).value;
}

// C_k(a) S(j) N (log R)^{k-r}.
inline double predictor_theorem1(std::int64_t N, double R, const CorrelationSpec& spec, const FactorSieve& sieve,
                                 const ConstantsTable& consts) {
    spec.validate();
    const double c = corr_constant(spec.powers).convert_to<double>();
    return c * shift_series(spec.shifts, sieve, consts) * static_cast<double>(N) *
           detail::ipow(std::log(R), spec.k() - spec.r());
}

// Mixed correlations carry leading constant 1 for k <= 3.
inline double predictor_mixed(std::int64_t N, double R, const CorrelationSpec& spec, const FactorSieve& sieve,
                              const ConstantsTable& consts) {
    spec.validate();
    if (spec.k() > 3) throw unsupported_error("mixed leading constants are only known for k <= 3");
    return shift_series(spec.shifts, sieve, consts) * static_cast<double>(N) *
           detail::ipow(std::log(R), spec.k() - spec.r());
}

// Main term of sum Lambda_R(n) Lambda_R(n + k).
inline double pair_main(std::int64_t k, std::int64_t N, double R, const FactorSieve& sieve,
                        const ConstantsTable& consts) {
    if (k == 0) return static_cast<double>(N) * std::log(R);
    require(static_cast<double>(detail::abs64(k)) <= R, "pair main term needs 0 < |k| <= R");
    return sseries_j_float(k, 2, sieve, consts) * static_cast<double>(N);
}

// Main term of sum Lambda_R(n) Lambda_R(n + k1) Lambda_R(n + k2).
inline double triple_main(std::int64_t k1, std::int64_t k2, std::int64_t N, double R, const FactorSieve& sieve,
                          const ConstantsTable& consts) {
    const double n = static_cast<double>(N);
    const double logR = std::log(R);
    if (k1 == 0 && k2 == 0) return 0.75 * n * logR * logR;
    const bool single = k1 == 0 || k2 == 0 || k1 == k2;
    if (single) {
        // One distinct nonzero offset k: a squared factor times a shifted one.
        const std::int64_t k = k1 == 0 ? k2 : (k2 == 0 ? k1 : k1);
        const double ak = static_cast<double>(detail::abs64(k));
        require(ak * ak <= R, "triple main term with one offset needs |k| <= sqrt(R)");
        return sseries_j_float(k, 2, sieve, consts) * n * logR;
    }
    const double ks = static_cast<double>(std::max(detail::abs64(k1), detail::abs64(k2)));
    require(ks * ks < R / 2.0, "triple main term needs max(|k1|, |k2|)^2 < R/2");
    const std::vector<std::int64_t> j{0, k1, k2};
    return sseries_vec_reduced(j, sieve, consts) * n;
}

// W_R(j) = sum over d_i <= R, (d_i, j_i) = 1, (d_r, d_s) | j_s - j_r of
// prod mu(d_i) log(R/d_i) / phi([d_1, ..., d_{k-1}]), for one or two shifts.
//
// Two shifts: write d_i = g a_i with g = (d_1, d_2). Then g | j_2 - j_1 and
// (g, j_1 j_2) = 1, a_1, a_2 are coprime to each other and to g, and
// phi([d_1, d_2]) = phi(g) phi(a_1) phi(a_2). The coprimality of a_1, a_2
// is removed by Moebius inversion over e | (a_1, a_2), which makes the inner
// sum a product of two single sums over multiples of e.
inline double w_r_direct(double R, const std::vector<std::int64_t>& jvec, const FactorSieve& sieve,
                         unsigned threads = 0) {
    require_arg(jvec.size() == 1 || jvec.size() == 2, "W_R is provided for one or two shifts");
    for (std::int64_t j : jvec) require(j != 0, "W_R needs every shift nonzero");
    if (jvec.size() == 1) {
        NeumaierSum s;
        const double logR = std::log(R);
        detail::for_each_coprime_squarefree(R, detail::abs64(jvec[0]), 1, sieve, [&](const detail::CoprimeTerm& t) {
            s.add(t.mu / t.phi_j * (logR - std::log(static_cast<double>(t.d))));
        });
        return s.value();
    }

    const std::int64_t D = divisor_cutoff(R);
    require_arg(D <= sieve.limit(), "cutoff R exceeds sieve limit");
    const std::int64_t j1 = detail::abs64(jvec[0]);
    const std::int64_t j2 = detail::abs64(jvec[1]);
    const std::int64_t diff = detail::abs64(jvec[1] - jvec[0]);
    const double logR = std::log(R);

    std::vector<int> mu(static_cast<std::size_t>(D) + 1, 0);
    std::vector<double> inv_phi(static_cast<std::size_t>(D) + 1, 0.0);
    std::vector<double> logs(static_cast<std::size_t>(D) + 1, 0.0);
    for (std::int64_t a = 1; a <= D; ++a) {
        mu[a] = moebius(a, sieve);
        if (mu[a] == 0) continue;
        inv_phi[a] = 1.0 / static_cast<double>(euler_phi(a, sieve));
        logs[a] = std::log(static_cast<double>(a));
    }

    std::vector<std::int64_t> gs;
    for (std::int64_t g = 1; g <= D; ++g) {
        if (mu[g] == 0 || std::gcd(g, j1) != 1 || std::gcd(g, j2) != 1) continue;
        if (diff != 0 && diff % g != 0) continue;
        gs.push_back(g);
    }

    std::vector<double> partial(gs.size(), 0.0);
    parallel_for(gs.size(), threads, [&](std::size_t idx) {
        const std::int64_t g = gs[idx];
        const std::int64_t M = D / g;
        const double base = logR - logs[g];
        NeumaierSum wg;
        for (std::int64_t e = 1; e <= M; ++e) {
            if (mu[e] == 0 || std::gcd(e, g) != 1 || std::gcd(e, j1) != 1 || std::gcd(e, j2) != 1) continue;
            NeumaierSum f1, f2;
            for (std::int64_t a = e; a <= M; a += e) {
                if (mu[a] == 0 || std::gcd(a, g) != 1) continue;
                const double t = mu[a] * inv_phi[a] * (base - logs[a]);
                if (std::gcd(a, j1) == 1) f1.add(t);
                if (std::gcd(a, j2) == 1) f2.add(t);
            }
            wg.add(mu[e] * f1.value() * f2.value());
        }
        partial[idx] = wg.value() * inv_phi[g];
    });
    NeumaierSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

// Limits of W_R: S((0,k)) log R for equal shifts (k, k), and S((0,k1,k2))
// for distinct nonzero shifts with |k1 k2 (k2 - k1)| < R/2.
inline double w_r_closed(double R, std::int64_t k1, std::int64_t k2, const FactorSieve& sieve,
                         const ConstantsTable& consts) {
    require(k1 != 0 && k2 != 0, "W_R closed form needs nonzero shifts");
    if (k1 == k2) return sseries_j_float(k1, 2, sieve, consts) * std::log(R);
    const double delta = std::fabs(static_cast<double>(k1) * static_cast<double>(k2) * static_cast<double>(k2 - k1));
    require(delta < R / 2.0, "W_R closed form needs |k1 k2 (k2 - k1)| < R/2");
    const std::vector<std::int64_t> j{0, k1, k2};
    return sseries_vec_reduced(j, sieve, consts);
}

struct DecompCheck {
    double brute = 0.0;
    double n_times_t3 = 0.0;
    double bound = 0.0;
    bool holds() const { return std::fabs(brute - n_times_t3) <= bound; }
};

inline constexpr double kDecompMaxR = 300.0;

// Three-point correlation of Lambda_R against N T_3, where T_3 sums
// prod mu(d_i) log(R/d_i) / [d_1, d_2, d_3] over divisor triples with
// (d_r, d_s) | k_s - k_r. Each admissible triple counts n <= N in one
// residue class mod [d_1, d_2, d_3], which is N/[d] up to an error below 1,
// so |brute - N T_3| never exceeds the sum of |prod mu log| over triples.
inline DecompCheck decomp_check_s3(std::int64_t N, double R, std::int64_t k1, std::int64_t k2, std::int64_t k3,
                                   const FactorSieve& sieve, unsigned threads = 0) {
    if (R > kDecompMaxR) throw resource_error("decomposition check is limited to R <= 300");
    require_arg(N >= 0, "N must be >= 0");
    require_arg(k1 >= 0 && k2 >= 0 && k3 >= 0, "decomposition check needs nonnegative shifts");
    const std::int64_t D = divisor_cutoff(R);
    const double logR = std::log(R);

    DecompCheck out;
    if (N > 0) {
        const std::int64_t top = N + std::max({k1, k2, k3});
        require_arg(top <= sieve.limit(), "N + max shift exceeds sieve limit");
        const auto f = batch(ApproxKind::LambdaR, 1, top + 1, R, sieve, threads);
        const auto v = f.values();
        out.brute = segmented_sum(1, N + 1, threads, [&](std::int64_t n) {
            return v[n + k1 - 1] * v[n + k2 - 1] * v[n + k3 - 1];
        });
    }

    std::vector<std::int64_t> ds;
    std::vector<double> w;
    for (std::int64_t d = 1; d <= D; ++d) {
        const int mu = moebius(d, sieve);
        if (mu == 0) continue;
        ds.push_back(d);
        w.push_back(mu * (logR - std::log(static_cast<double>(d))));
    }
    const auto divides = [](std::int64_t g, std::int64_t x) { return x % g == 0; };
    const std::int64_t k21 = k2 - k1, k31 = k3 - k1, k32 = k3 - k2;
    std::vector<double> t3(ds.size(), 0.0), env(ds.size(), 0.0);
    parallel_for(ds.size(), threads, [&](std::size_t a) {
        NeumaierSum s, e;
        const std::int64_t d1 = ds[a];
        for (std::size_t b = 0; b < ds.size(); ++b) {
            const std::int64_t d2 = ds[b];
            const std::int64_t g12 = std::gcd(d1, d2);
            if (!divides(g12, k21)) continue;
            const std::int64_t l12 = d1 / g12 * d2;
            for (std::size_t c = 0; c < ds.size(); ++c) {
                const std::int64_t d3 = ds[c];
                if (!divides(std::gcd(d1, d3), k31) || !divides(std::gcd(d2, d3), k32)) continue;
                const std::int64_t l = l12 / std::gcd(l12, d3) * d3;
                const double prod = w[a] * w[b] * w[c];
                s.add(prod / static_cast<double>(l));
                e.add(std::fabs(prod));
            }
        }
        t3[a] = s.value();
        env[a] = e.value();
    });
    NeumaierSum t, bnd;
    for (std::size_t a = 0; a < ds.size(); ++a) {
        t.add(t3[a]);
        bnd.add(env[a]);
    }
    out.n_times_t3 = static_cast<double>(N) * t.value();
    out.bound = N > 0 ? bnd.value() : 0.0;
    return out;
}

} // namespace divisum
