#pragma once

// Closed-form and root-solved upper bounds for small normalized prime gaps
// and the companion large-gap lower bound.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "divisum/errors.hpp"

namespace divisum {

inline double exp_minus_gamma() { return std::exp(-std::numbers::egamma_v<double>); }

// r - 1/2.
inline double xi_bd(double r) {
    require_arg(r >= 1, "r must be >= 1");
    return r - 0.5;
}

// (2 + sqrt 3) / 8.
inline double xi_bd_erdos() { return (2.0 + std::sqrt(3.0)) / 8.0; }

struct HuxleyResult {
    double theta = 0.0; // root of t + sin t = pi / (B r)
    double bound = 0.0;
    double residual = 0.0;
};

// Smallest positive root of t + sin t = pi/(B r), which must also satisfy
// sin t < (pi + t) cos t; the bound is
// ((2r - 1)/(4 B r)) (B r + (B r - 1) t / sin t).
inline HuxleyResult huxley(double B, int r) {
    require_arg(B > 0.0, "sieve constant B must be > 0");
    require_arg(r >= 1, "r must be >= 1");
    const double Br = B * r;
    const double target = std::numbers::pi / Br;
    if (Br <= 1.0) throw precondition_error("need B r > 1 so that pi/(B r) < pi");
    // t + sin t is strictly increasing on (0, pi) with range (0, pi).
    double lo = 1e-15, hi = std::numbers::pi - 1e-15;
    const auto f = [&](double t) { return t + std::sin(t) - target; };
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    HuxleyResult out;
    out.theta = 0.5 * (lo + hi);
    out.residual = std::fabs(f(out.theta));
    const double s = std::sin(out.theta);
    if (!(s < (std::numbers::pi + out.theta) * std::cos(out.theta)))
        throw precondition_error("root violates sin t < (pi + t) cos t (B = " + std::to_string(B) +
                                 ", r = " + std::to_string(r) + ")");
    out.bound = (2.0 * r - 1.0) / (4.0 * Br) * (Br + (Br - 1.0) * out.theta / s);
    return out;
}

// r - sqrt(vartheta r / 2).
inline double xi_gpy(double r, double vartheta) {
    require_arg(r >= 1, "r must be >= 1");
    require_arg(vartheta > 0.0 && vartheta <= 1.0, "level of distribution must lie in (0, 1]");
    return r - std::sqrt(vartheta * r / 2.0);
}

// r + sqrt(r) / 2.
inline double theta_gpy(double r) {
    require_arg(r >= 1, "r must be >= 1");
    return r + std::sqrt(r) / 2.0;
}

inline double maier_scale(double x) { return x * exp_minus_gamma(); }

enum class BoundMethod { BD_half, BD_erdos, Huxley, GPY, GPY_EH, Theta_GPY };

inline const char* to_string(BoundMethod m) {
    switch (m) {
    case BoundMethod::BD_half: return "BD_half";
    case BoundMethod::BD_erdos: return "BD_erdos";
    case BoundMethod::Huxley: return "Huxley";
    case BoundMethod::GPY: return "GPY";
    case BoundMethod::GPY_EH: return "GPY_EH";
    case BoundMethod::Theta_GPY: return "Theta_GPY";
    }
    return "?";
}

struct BoundRow {
    BoundMethod method;
    int r;
    double B;        // NaN when unused
    double vartheta; // NaN when unused
    bool maier_scaled;
    double value;
};

struct BoundTable {
    std::vector<BoundRow> rows;
};

// Every method family for r = 1..rmax. GPY uses the given vartheta, GPY_EH
// takes vartheta = 1; Huxley rows appear plain and Maier-scaled.
inline BoundTable bound_table(double B, double vartheta, int rmax) {
    require_arg(rmax >= 1, "rmax must be >= 1");
    const double nan = std::nan("");
    BoundTable t;
    for (int r = 1; r <= rmax; ++r) {
        t.rows.push_back({BoundMethod::BD_half, r, nan, nan, false, xi_bd(r)});
        if (r == 1) t.rows.push_back({BoundMethod::BD_erdos, r, nan, nan, false, xi_bd_erdos()});
        const double hux = huxley(B, r).bound;
        t.rows.push_back({BoundMethod::Huxley, r, B, nan, false, hux});
        t.rows.push_back({BoundMethod::Huxley, r, B, nan, true, maier_scale(hux)});
        t.rows.push_back({BoundMethod::GPY, r, nan, vartheta, false, xi_gpy(r, vartheta)});
        t.rows.push_back({BoundMethod::GPY_EH, r, nan, 1.0, false, xi_gpy(r, 1.0)});
        t.rows.push_back({BoundMethod::Theta_GPY, r, nan, nan, false, theta_gpy(r)});
    }
    return t;
}

} // namespace divisum
