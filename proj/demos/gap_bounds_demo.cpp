// Small-gap bounds for r = 1..5 from each method, with the Huxley root shown.

#include <cstdio>

#include "divisum/gap_bounds.hpp"

int main() {
    using namespace divisum;
    const double B = 4.0;
    std::printf("%3s %10s %10s %10s %10s %10s %10s\n", "r", "BD", "theta", "Huxley", "Maier", "GPY(1/2)", "GPY(1)");
    for (int r = 1; r <= 5; ++r) {
        const auto hx = huxley(B, r);
        std::printf("%3d %10.6f %10.6f %10.6f %10.6f %10.6f %10.6f\n", r, xi_bd(r), hx.theta, hx.bound,
                    maier_scale(hx.bound), xi_gpy(r, 0.5), xi_gpy(r, 1.0));
    }
    std::printf("Erdos-type r = 1 bound: %.6f\n", xi_bd_erdos());
    std::printf("large gaps: Theta(r) >= r + sqrt(r)/2, e.g. Theta(4) >= %.3f\n", theta_gpy(4));
    return 0;
}
