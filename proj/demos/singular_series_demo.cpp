// Singular series of a few shift vectors: exact rational form in the twin
// and triple constants next to the Euler product.

#include <cstdio>
#include <vector>

#include "divisum/divisum.hpp"

int main() {
    using namespace divisum;
    const std::int64_t prime_limit = 1000000;
    const FactorSieve sieve(prime_limit);
    const auto consts = ConstantsTable::build(sieve, prime_limit);

    std::printf("C2 = %.12f  C3 = %.12f\n", consts.c2, consts.c3);
    const std::vector<std::vector<std::int64_t>> cases{{0, 2}, {0, 6}, {0, 2, 6}, {0, 2, 4}, {0, 4, 6}, {0, 6, 12}};
    for (const auto& jvec : cases) {
        const auto exact = sseries_vec_exact(jvec, sieve);
        const auto product = sseries_vec(jvec, prime_limit, sieve);
        std::printf("S(");
        for (std::size_t i = 0; i < jvec.size(); ++i) std::printf(i ? ",%lld" : "%lld", static_cast<long long>(jvec[i]));
        std::printf(") = %-12s = %.12f   product %.12f\n", exact.str().c_str(), exact.value(consts), product.value);
    }

    // Averages over [1, h]^r approach 1 as h grows.
    for (std::int64_t h : {100, 1000, 5000})
        std::printf("mean S over [1,%lld]^2 = %.6f\n", static_cast<long long>(h), singular_avg(h, 2, sieve, consts));
    return 0;
}
