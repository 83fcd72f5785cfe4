#pragma once

// Short-interval moments of psi and psi_R, Poisson (Gallagher) moments and
// their combinatorics, the averaged singular series, the M(h, rho) quadratic
// and prime-count histograms over (N, 2N].

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "divisum/arith.hpp"
#include "divisum/correlations.hpp"
#include "divisum/divisor_approx.hpp"
#include "divisum/errors.hpp"
#include "divisum/singular_series.hpp"
#include "divisum/summation.hpp"

namespace divisum {

inline constexpr int kMaxStirling = 20;

// Partitions of a k-set into r nonempty blocks.
inline std::uint64_t stirling2(int k, int r) {
    require_arg(k >= 1 && k <= kMaxStirling && r >= 1 && r <= k, "stirling2 needs 1 <= r <= k <= 20");
    std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
    row[0] = 1;
    for (int n = 1; n <= k; ++n) {
        for (int m = n; m >= 1; --m) row[m] = static_cast<std::uint64_t>(m) * row[m] + row[m - 1];
        row[0] = 0;
    }
    return row[r];
}

namespace detail {

using i128 = __int128;

inline i128 factorial128(int n) {
    i128 v = 1;
    for (int i = 2; i <= n; ++i) v *= i;
    return v;
}

// Calls fn(parts) for every composition of k into r positive parts.
template <class Fn>
void for_each_composition(int k, int r, Fn&& fn) {
    std::vector<int> parts(static_cast<std::size_t>(r), 1);
    parts.back() = k - (r - 1);
    const auto rec = [&](auto&& self, int idx, int remaining) -> void {
        if (idx == r - 1) {
            parts[idx] = remaining;
            fn(static_cast<const std::vector<int>&>(parts));
            return;
        }
        for (int a = 1; a <= remaining - (r - 1 - idx); ++a) {
            parts[idx] = a;
            self(self, idx + 1, remaining - a);
        }
    };
    rec(rec, 0, k);
}

inline i128 multinomial128(const std::vector<int>& parts) {
    // Product of binomials keeps intermediates exact.
    i128 v = 1;
    int n = 0;
    for (int a : parts) {
        for (int i = 1; i <= a; ++i) {
            ++n;
            v = v * n / i;
        }
    }
    return v;
}

} // namespace detail

// Sum over compositions (a_1..a_r) of k of k!/(a_1!...a_r!) against r! {k r}.
inline bool multinomial_identity_check(int k, int r) {
    require_arg(k >= 1 && k <= kMaxStirling && r >= 1 && r <= k, "identity check needs 1 <= r <= k <= 20");
    detail::i128 total = 0;
    detail::for_each_composition(k, r, [&](const std::vector<int>& parts) { total += detail::multinomial128(parts); });
    return total == detail::factorial128(r) * static_cast<detail::i128>(stirling2(k, r));
}

// Poisson moment sum_r {k r} lambda^r.
inline double gallagher_moment(double lambda, int k) {
    require_arg(k >= 1 && k <= kMaxStirling, "gallagher_moment needs 1 <= k <= 20");
    double v = 0.0;
    for (int r = k; r >= 1; --r) v = v * lambda + static_cast<double>(stirling2(k, r));
    return v * lambda;
}

// theta^k sum_r (1/r!) (lambda/theta)^r sum_a multinomial(k; a) C_k(a): the
// coefficient of N log^k N in the k-th moment of psi_R with R = N^theta.
inline double pk_poly(double lambda, double theta, int k) {
    require_arg(k >= 1, "pk_poly needs k >= 1");
    if (k > 3) throw unsupported_error("pk_poly needs every C_k(a), known only for k <= 3");
    double total = 0.0;
    double rfact = 1.0;
    for (int r = 1; r <= k; ++r) {
        rfact *= r;
        Rational inner{0};
        detail::for_each_composition(k, r, [&](const std::vector<int>& parts) {
            inner += Rational(static_cast<long long>(detail::multinomial128(parts))) * corr_constant(parts);
        });
        total += inner.convert_to<double>() / rfact * std::pow(lambda, r) * std::pow(theta, k - r);
    }
    return total;
}

// Mixed moments carry C_k(a) = 1, which leaves sum_r {k r} lambda^r theta^{k-r}.
inline double pk_poly_mixed(double lambda, double theta, int k) {
    require_arg(k >= 1, "pk_poly_mixed needs k >= 1");
    if (k > 3) throw unsupported_error("mixed moment constants are known only for k <= 3");
    double total = 0.0;
    for (int r = 1; r <= k; ++r)
        total += static_cast<double>(stirling2(k, r)) * std::pow(lambda, r) * std::pow(theta, k - r);
    return total;
}

// Average of S(j) over distinct j in [1, h]^r.
inline double singular_avg(std::int64_t h, int r, const FactorSieve& sieve, const ConstantsTable& consts) {
    require_arg(r == 2 || r == 3, "singular_avg supports r in {2, 3}");
    require_arg(h >= 1, "singular_avg needs h >= 1");
    require_arg(h <= (r == 2 ? 10000 : 1000), "singular_avg limits h to 10^4 (r = 2) or 10^3 (r = 3)");
    require_arg(h <= sieve.limit(), "h exceeds sieve limit");
    std::vector<std::vector<std::int64_t>> support(static_cast<std::size_t>(h));
    for (std::int64_t d = 1; d < h; ++d) support[d] = prime_support(d, sieve);
    const double hd = static_cast<double>(h);
    if (r == 2) {
        NeumaierSum s;
        for (std::int64_t d = 1; d < h; ++d)
            s.add(static_cast<double>(h - d) * sseries_j_value(support[d], 2, consts));
        return 2.0 * s.value() / (hd * hd);
    }
    // Triples {x, x + a, x + b}, 0 < a < b < h, each fitting h - b times and
    // ordered 3! ways; S = S_2((a, b)) S_3(a b (b - a)).
    NeumaierSum s;
    std::vector<std::int64_t> merged;
    for (std::int64_t b = 2; b < h; ++b) {
        // S_3 needs 3 | a b (b - a), S_2(gcd) needs gcd even.
        for (std::int64_t a = 1; a < b; ++a) {
            const std::int64_t g = std::gcd(a, b);
            if (g % 2 != 0) continue;
            merged.clear();
            for (const auto* sp : {&support[a], &support[b], &support[b - a]})
                merged.insert(merged.end(), sp->begin(), sp->end());
            std::sort(merged.begin(), merged.end());
            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
            const double s3 = sseries_j_value(merged, 3, consts);
            if (s3 == 0.0) continue;
            s.add(static_cast<double>(h - b) * sseries_j_value(support[g], 2, consts) * s3);
        }
    }
    return 6.0 * s.value() / (hd * hd * hd);
}

enum class MomentSource { Psi, PsiR, Mixed };

inline const char* to_string(MomentSource s) {
    switch (s) {
    case MomentSource::Psi: return "psi";
    case MomentSource::PsiR: return "psir";
    case MomentSource::Mixed: return "mixed";
    }
    return "?";
}

struct MomentParams {
    std::int64_t N = 0;
    std::int64_t h = 0;
    int k = 1;
    MomentSource source = MomentSource::Psi;
    double R = 1.0;
    double C = 0.0;
    bool primed = false; // n over (N, 2N] instead of [1, N]
    unsigned threads = 0;
};

struct MomentReport {
    std::int64_t N = 0;
    std::int64_t h = 0;
    double R = 1.0;
    double C = 0.0;
    int k = 1;
    double lambda = 0.0; // realized h / log N
    double theta = 0.0;  // log R / log N
    double value = 0.0;
    double normalized = 0.0; // value / (N log^k N)
    std::optional<double> predictor;            // absolute
    std::optional<double> predictor_normalized; // coefficient of N log^k N
};

namespace detail {

inline double binom(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

// Sum over n in [lo, hi] of term(n, a(n), b(n)) where a(n), b(n) are the
// window sums x[n+1..n+h] of the two arrays (b may alias a).
template <class Term>
double window_sum(std::int64_t lo, std::int64_t hi, std::int64_t h, std::span<const double> a,
                  std::span<const double> b, unsigned threads, Term&& term) {
    // Arrays are indexed from m = 1.
    const auto at = [](std::span<const double> x, std::int64_t m) { return x[static_cast<std::size_t>(m - 1)]; };
    const std::size_t segs = segment_count(lo, hi + 1);
    std::vector<double> partial(segs, 0.0);
    parallel_for(segs, threads, [&](std::size_t s) {
        const std::int64_t first = lo + static_cast<std::int64_t>(s) * kSegmentLength;
        const std::int64_t last = std::min(hi, first + kSegmentLength - 1);
        NeumaierSum wa, wb;
        for (std::int64_t m = first + 1; m <= first + h; ++m) {
            wa.add(at(a, m));
            wb.add(at(b, m));
        }
        NeumaierSum acc;
        for (std::int64_t n = first;; ++n) {
            acc.add(term(wa.value(), wb.value()));
            if (n == last) break;
            if (h > 0) {
                wa.add(at(a, n + h + 1));
                wa.add(-at(a, n + 1));
                wb.add(at(b, n + h + 1));
                wb.add(-at(b, n + 1));
            }
        }
        partial[s] = acc.value();
    });
    NeumaierSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

} // namespace detail

// Coefficient of N log^k N predicted for the C-shifted moment.
inline std::optional<double> moment_predictor(MomentSource source, int k, double lambda, double theta, double C) {
    const auto plain = [&](int i) -> double {
        if (i == 0) return 1.0;
        switch (source) {
        case MomentSource::Psi: return gallagher_moment(lambda, i);
        case MomentSource::PsiR: return pk_poly(lambda, theta, i);
        case MomentSource::Mixed: return pk_poly_mixed(lambda, theta, i);
        }
        return 0.0;
    };
    if ((source == MomentSource::Psi && k > kMaxStirling) || (source != MomentSource::Psi && k > 3))
        return std::nullopt;
    double v = 0.0;
    if (source == MomentSource::Mixed) {
        // psi-increment times (psi_R-increment - C log N)^{k-1}.
        for (int i = 0; i <= k - 1; ++i) v += detail::binom(k - 1, i) * std::pow(-C, k - 1 - i) * plain(i + 1);
    } else {
        for (int i = 0; i <= k; ++i) v += detail::binom(k, i) * std::pow(-C, k - i) * plain(i);
    }
    return v;
}

inline MomentReport moment(const MomentParams& p, const FactorSieve& sieve) {
    require_arg(p.N >= 2, "moment needs N >= 2");
    require_arg(p.h >= 0, "moment needs h >= 0");
    require_arg(p.k >= 1, "moment needs k >= 1");
    if (p.source == MomentSource::Mixed) require_arg(p.k >= 2, "mixed moment needs k >= 2");
    const std::int64_t lo = p.primed ? p.N + 1 : 1;
    const std::int64_t hi = p.primed ? 2 * p.N : p.N;
    const std::int64_t top = hi + p.h;
    require_arg(top <= sieve.limit(), "window end N + h exceeds sieve limit");

    const double logN = std::log(static_cast<double>(p.N));
    const double shift = p.C * logN;
    const int k = p.k;

    const auto vm = (p.source != MomentSource::PsiR) ? batch(ApproxKind::VonMangoldt, 1, top + 1, p.R, sieve, p.threads)
                                                     : ApproxArray(ApproxKind::VonMangoldt, p.R, 1, {});
    const auto fr = (p.source != MomentSource::Psi) ? batch(ApproxKind::LambdaR, 1, top + 1, p.R, sieve, p.threads)
                                                    : ApproxArray(ApproxKind::LambdaR, p.R, 1, {});

    double value = 0.0;
    switch (p.source) {
    case MomentSource::Psi:
        value = detail::window_sum(lo, hi, p.h, vm.values(), vm.values(), p.threads,
                                   [&](double x, double) { return detail::ipow(x - shift, k); });
        break;
    case MomentSource::PsiR:
        value = detail::window_sum(lo, hi, p.h, fr.values(), fr.values(), p.threads,
                                   [&](double x, double) { return detail::ipow(x - shift, k); });
        break;
    case MomentSource::Mixed:
        value = detail::window_sum(lo, hi, p.h, vm.values(), fr.values(), p.threads,
                                   [&](double x, double y) { return x * detail::ipow(y - shift, k - 1); });
        break;
    }

    MomentReport out;
    out.N = p.N;
    out.h = p.h;
    out.R = p.R;
    out.C = p.C;
    out.k = k;
    out.lambda = static_cast<double>(p.h) / logN;
    out.theta = std::log(p.R) / logN;
    out.value = value;
    const double scale = static_cast<double>(p.N) * detail::ipow(logN, k);
    out.normalized = value / scale;
    out.predictor_normalized = moment_predictor(p.source, k, out.lambda, out.theta, p.C);
    if (out.predictor_normalized) out.predictor = *out.predictor_normalized * scale;
    return out;
}

struct MhRho {
    double value = 0.0;
    double normalized = 0.0; // value / (N log^3 N)
};

// Sum over (N, 2N] of (psi-increment - rho log N)(psi_R-increment - C log N)^2.
inline MhRho m_h_rho(std::int64_t N, std::int64_t h, double rho, double R, double C, const FactorSieve& sieve,
                     unsigned threads = 0) {
    require_arg(N >= 2 && h >= 0, "m_h_rho needs N >= 2 and h >= 0");
    const std::int64_t top = 2 * N + h;
    require_arg(top <= sieve.limit(), "window end 2N + h exceeds sieve limit");
    const double logN = std::log(static_cast<double>(N));
    const auto vm = batch(ApproxKind::VonMangoldt, 1, top + 1, R, sieve, threads);
    const auto fr = batch(ApproxKind::LambdaR, 1, top + 1, R, sieve, threads);
    const double a = rho * logN, c = C * logN;
    MhRho out;
    out.value = detail::window_sum(N + 1, 2 * N, h, vm.values(), fr.values(), threads, [&](double x, double y) {
        const double t = y - c;
        return (x - a) * t * t;
    });
    out.normalized = out.value / (static_cast<double>(N) * logN * logN * logN);
    return out;
}

inline void require_off_diagonal(double lambda, double rho) {
    require(lambda != rho, "closed form of M(h, rho) needs lambda != rho");
}

// Optimal shift C* = lambda (1 + theta / (lambda - rho)).
inline double optimal_c(double lambda, double rho, double theta) {
    require_off_diagonal(lambda, rho);
    return lambda * (1.0 + theta / (lambda - rho));
}

// (lambda theta / (lambda - rho)) ((lambda - rho)^2 - theta rho), normalized.
inline double m_h_rho_closed(double lambda, double rho, double theta) {
    require_off_diagonal(lambda, rho);
    const double d = lambda - rho;
    return lambda * theta / d * (d * d - theta * rho);
}

// Expanded quadratic in C from the mixed and pure moment polynomials.
inline double m_h_rho_quadratic(double lambda, double rho, double theta, double C) {
    const double mixed = pk_poly_mixed(lambda, theta, 3) - 2.0 * C * pk_poly_mixed(lambda, theta, 2) + C * C * lambda;
    const double pure = pk_poly(lambda, theta, 2) - 2.0 * C * lambda + C * C;
    return mixed - rho * pure;
}

// Same quadratic after completing the square.
inline double m_h_rho_completed(double lambda, double rho, double theta, double C) {
    const double dc = C - optimal_c(lambda, rho, theta);
    return (lambda - rho) * dc * dc + m_h_rho_closed(lambda, rho, theta);
}

struct GapHistogram {
    std::int64_t N = 0;
    std::int64_t h = 0;
    std::vector<std::int64_t> counts; // counts[r] = P_r(N, h)

    std::int64_t total() const {
        std::int64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }

    std::int64_t p(std::size_t r) const { return r < counts.size() ? counts[r] : 0; }

    std::int64_t q_minus(std::size_t r) const {
        std::int64_t t = 0;
        for (std::size_t m = 0; m <= r && m < counts.size(); ++m) t += counts[m];
        return t;
    }

    std::int64_t q_plus(std::size_t r) const { return total() - q_minus(r); }
};

namespace detail {

// Index of the first prime > x in the sieve's prime list.
inline std::size_t prime_index_above(std::int64_t x, std::span<const std::int64_t> primes) {
    return static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
}

} // namespace detail

// Counts of pi(n + h) - pi(n) over N < n <= 2N.
inline GapHistogram gap_histogram(std::int64_t N, std::int64_t h, const FactorSieve& sieve, unsigned threads = 0) {
    require_arg(N >= 1 && h >= 0, "gap_histogram needs N >= 1 and h >= 0");
    require_arg(2 * N + h <= sieve.limit(), "2N + h exceeds sieve limit");
    const auto primes = sieve.primes();
    const std::int64_t lo = N + 1, hi = 2 * N;
    const std::size_t segs = segment_count(lo, hi + 1);
    std::vector<std::vector<std::int64_t>> parts(segs);
    parallel_for(segs, threads, [&](std::size_t s) {
        const std::int64_t first = lo + static_cast<std::int64_t>(s) * kSegmentLength;
        const std::int64_t last = std::min(hi, first + kSegmentLength - 1);
        // Primes in (n, n + h] are those with index in [a, b).
        std::size_t a = detail::prime_index_above(first, primes);
        std::size_t b = detail::prime_index_above(first + h, primes);
        auto& cnt = parts[s];
        for (std::int64_t n = first; n <= last; ++n) {
            while (a < primes.size() && primes[a] <= n) ++a;
            while (b < primes.size() && primes[b] <= n + h) ++b;
            const std::size_t r = b - a;
            if (cnt.size() <= r) cnt.resize(r + 1, 0);
            ++cnt[r];
        }
    });
    GapHistogram out;
    out.N = N;
    out.h = h;
    for (const auto& c : parts) {
        if (out.counts.size() < c.size()) out.counts.resize(c.size(), 0);
        for (std::size_t r = 0; r < c.size(); ++r) out.counts[r] += c[r];
    }
    return out;
}

// Exact split of Q_r^+ and Q_r^- into a sum over consecutive primes p_j in
// [N+1, 2N] plus boundary corrections, with the cruder prime-sum bounds.
struct GapDecomposition {
    std::int64_t r = 0;
    std::int64_t q_plus = 0;
    std::int64_t plus_sum = 0;      // sum_j (p_{j+1} - max(p_j, p_{j+r+1} - h))^+
    std::int64_t plus_boundary = 0; // head minus tail correction
    std::int64_t plus_bound = 0;    // h #{j : p_{j+r+1} - p_{j+1} < h}
    std::int64_t q_minus = 0;
    std::int64_t minus_sum = 0;     // sum_j (min(p_{j+1}, p_{j+r+1} - h) - p_j)^+
    std::int64_t minus_boundary = 0;
    std::int64_t minus_bound = 0;   // sum_{j : p_{j+r+1} - p_j > h} (p_{j+r+1} - p_j)

    bool plus_exact() const { return q_plus == plus_sum + plus_boundary; }
    bool minus_exact() const { return q_minus == minus_sum + minus_boundary; }
    bool plus_within_bound() const { return plus_sum <= plus_bound; }
    bool minus_within_bound() const { return minus_sum <= minus_bound; }
};

inline GapDecomposition gap_decomposition(std::int64_t N, std::int64_t h, std::int64_t r, const FactorSieve& sieve) {
    require_arg(N >= 1 && h >= 0 && r >= 0, "gap_decomposition needs N >= 1, h >= 0, r >= 0");
    const auto primes = sieve.primes();
    const std::size_t j0 = detail::prime_index_above(N, primes);    // smallest prime >= N + 1
    const std::size_t j1 = detail::prime_index_above(2 * N, primes); // first prime > 2N
    require_arg(j0 < j1, "no prime in [N+1, 2N]");
    require_arg(j1 + static_cast<std::size_t>(r) < primes.size() && primes[j1] + h <= sieve.limit(),
                "sieve does not reach the primes needed past 2N");
    const auto count_in = [&](std::int64_t n) {
        // pi(n + h) - pi(n)
        return static_cast<std::int64_t>(detail::prime_index_above(n + h, primes) -
                                         detail::prime_index_above(n, primes));
    };

    const auto hist = gap_histogram(N, h, sieve, 1);
    GapDecomposition out;
    out.r = r;
    out.q_plus = hist.q_plus(static_cast<std::size_t>(r));
    out.q_minus = hist.q_minus(static_cast<std::size_t>(r));

    // n in [N+1, p_{j0}) lies before the first window; n in (2N, p_{j1}) is
    // covered by the last prime's range but outside (N, 2N].
    for (std::int64_t n = N + 1; n < primes[j0]; ++n) {
        if (count_in(n) > r) ++out.plus_boundary;
        else ++out.minus_boundary;
    }
    for (std::int64_t n = 2 * N + 1; n < primes[j1]; ++n) {
        if (count_in(n) > r) --out.plus_boundary;
        else --out.minus_boundary;
    }
    for (std::size_t j = j0; j < j1; ++j) {
        const std::int64_t pj = primes[j], pj1 = primes[j + 1], pjr = primes[j + r + 1];
        const std::int64_t plus = pj1 - std::max(pj, pjr - h);
        if (plus > 0) out.plus_sum += plus;
        if (pjr - pj1 < h) out.plus_bound += h;
        const std::int64_t minus = std::min(pj1, pjr - h) - pj;
        if (minus > 0) out.minus_sum += minus;
        if (pjr - pj > h) out.minus_bound += pjr - pj;
    }
    return out;
}

// min over primes p_n in (N, 2N] of (p_{n+r} - p_n) / log p_n.
inline double empirical_xi(std::int64_t N, std::int64_t r, const FactorSieve& sieve) {
    require_arg(N >= 1 && r >= 1, "empirical_xi needs N >= 1 and r >= 1");
    const auto primes = sieve.primes();
    const std::size_t a = detail::prime_index_above(N, primes);
    const std::size_t b = detail::prime_index_above(2 * N, primes);
    require_arg(a < b, "no prime in (N, 2N]");
    require_arg(b - 1 + static_cast<std::size_t>(r) < primes.size(), "sieve does not reach p_{n+r}");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = a; i < b; ++i)
        best = std::min(best, static_cast<double>(primes[i + r] - primes[i]) / std::log(static_cast<double>(primes[i])));
    return best;
}

} // namespace divisum
