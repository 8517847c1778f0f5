#pragma once

// N-functions (Young functions) Phi with a numeric inverse and the two
// Orlicz indices
//
//   alpha_bar = inf_{t>0} Phi^{-1}(t) / Phi^{-1}(2t)
//   beta_bar  = sup_{t>0} Phi^{-1}(t) / Phi^{-1}(2t)
//
// Only closed-form families are supported so that the inverse bracketing is
// always safe:
//
//   power:     Phi(t) = t^p,                       p > 1
//   power_log: Phi(t) = t^p * ln(1+t) / ln 2,      p > 1   (Phi(1) = 1)
//   exp_minus: Phi(t) = e^t - t - 1

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "qnl/errors.hpp"
#include "qnl/solvers.hpp"

namespace qnl {

enum class PhiFamily { power, power_log, exp_minus };

struct NFunction {
    PhiFamily family = PhiFamily::power;
    double p = 2.0; // exponent; ignored for exp_minus

    static NFunction power(double p) { return make(PhiFamily::power, p); }
    static NFunction power_log(double p) { return make(PhiFamily::power_log, p); }
    static NFunction exp_minus() { return NFunction{PhiFamily::exp_minus, 0.0}; }

    bool operator==(const NFunction&) const = default;

private:
    static NFunction make(PhiFamily fam, double p) {
        if (!(p > 1.0) || !std::isfinite(p))
            throw domain_error("NFunction: exponent must satisfy p > 1");
        return NFunction{fam, p};
    }
};

inline double eval_phi(const NFunction& phi, double t) {
    if (!(t >= 0.0))
        throw domain_error("eval_phi: t must be >= 0");
    switch (phi.family) {
    case PhiFamily::power:
        return std::pow(t, phi.p);
    case PhiFamily::power_log:
        return std::pow(t, phi.p) * std::log1p(t) / std::numbers::ln2;
    case PhiFamily::exp_minus:
        return std::expm1(t) - t;
    }
    return 0.0;
}

// Inverse by geometric bracket growth from [0, 1] plus bisection.
// Postcondition: |Phi(result) - y| <= tol * max(1, y).
inline double phi_inverse(const NFunction& phi, double y, double tol = 1e-12) {
    if (!std::isfinite(y) || y < 0.0)
        throw domain_error("phi_inverse: y must be finite and >= 0");
    if (!(tol > 0.0))
        throw domain_error("phi_inverse: tol must be > 0");
    if (y == 0.0) return 0.0;

    double lo = 0.0, hi = 1.0;
    while (eval_phi(phi, hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300)
            throw domain_error("phi_inverse: y too large to bracket");
    }
    // run to bracket convergence; this lands far inside the documented
    // |Phi(t) - y| <= tol * max(1, y) contract even for tiny y
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (eval_phi(phi, mid) < y)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

struct OrliczIndices {
    double alpha_bar = 0.0; // inf of the ratio, in [1/2, 1]
    double beta_bar = 0.0;  // sup of the ratio, in [1/2, 1]
    double argmin_t = 0.0;
    double argmax_t = 0.0;
};

struct IndexSearchGrid {
    double t_min = 1e-6;
    double t_max = 1e6;
    std::size_t points = 4096;
    int refine_rounds = 3; // 10x local zoom around the current extremizer
};

inline double index_ratio(const NFunction& phi, double t, double tol = 1e-12) {
    return phi_inverse(phi, t, tol) / phi_inverse(phi, 2.0 * t, tol);
}

inline OrliczIndices orlicz_indices(const NFunction& phi, const IndexSearchGrid& grid = {}) {
    auto scan = [&](double lo, double hi, std::size_t n, bool minimize, double& best,
                    double& arg, double& bra_lo, double& bra_hi) {
        const auto ts = log_grid(lo, hi, n);
        std::size_t best_i = 0;
        bool have = false;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double r = index_ratio(phi, ts[i]);
            const bool better = !have || (minimize ? r < best : r > best);
            if (better) { // ties keep the smallest t (first hit on an ascending grid)
                best = r;
                arg = ts[i];
                best_i = i;
                have = true;
            }
        }
        bra_lo = ts[best_i > 0 ? best_i - 1 : 0];
        bra_hi = ts[best_i + 1 < ts.size() ? best_i + 1 : ts.size() - 1];
    };

    OrliczIndices out;
    double alo, ahi, blo, bhi;
    scan(grid.t_min, grid.t_max, grid.points, true, out.alpha_bar, out.argmin_t, alo, ahi);
    scan(grid.t_min, grid.t_max, grid.points, false, out.beta_bar, out.argmax_t, blo, bhi);
    for (int round = 0; round < grid.refine_rounds; ++round) {
        const std::size_t n = std::max<std::size_t>(grid.points / 10, 128);
        scan(alo, ahi, n, true, out.alpha_bar, out.argmin_t, alo, ahi);
        scan(blo, bhi, n, false, out.beta_bar, out.argmax_t, blo, bhi);
    }
    return out;
}

inline std::string to_string(PhiFamily fam) {
    switch (fam) {
    case PhiFamily::power: return "power";
    case PhiFamily::power_log: return "powerlog";
    case PhiFamily::exp_minus: return "expminus";
    }
    return "?";
}

inline std::string to_string(const NFunction& phi) {
    if (phi.family == PhiFamily::exp_minus) return "expminus";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s:%.17g", to_string(phi.family).c_str(), phi.p);
    return buf;
}

} // namespace qnl
