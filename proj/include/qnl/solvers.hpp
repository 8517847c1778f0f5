#pragma once

// Scalar root finding and 1-D maximization helpers shared by the norm and
// constant-search code. Everything here is deterministic: fixed iteration
// counts, no time- or thread-dependent state.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "qnl/errors.hpp"

namespace qnl {

// Bisection for a monotone increasing predicate: returns x in [lo, hi] with
// pred(x-) false, pred(x+) true. pred must be false at lo and true at hi.
template <typename Pred>
double bisect_boundary(Pred pred, double lo, double hi, int iters = 200) {
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // bracket exhausted in doubles
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Root of a continuous function with f(lo), f(hi) of opposite sign.
template <typename F>
double bisect_root(F f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    const bool rising = flo < 0.0;
    return bisect_boundary([&](double x) { return rising ? f(x) >= 0.0 : f(x) <= 0.0; },
                           lo, hi, iters);
}

// Golden-section maximization of a unimodal-ish function on [a, b].
template <typename F>
double golden_max(F f, double a, double b, int iters = 80) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g;
    g.reserve(n);
    if (n == 1 || lo == hi) {
        g.push_back(lo);
        return g;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        g.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                       static_cast<double>(n - 1)));
    g.front() = lo;
    g.back() = hi;
    return g;
}

inline std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g;
    g.reserve(n);
    if (n == 1 || lo == hi) {
        g.push_back(lo);
        return g;
    }
    for (std::size_t i = 0; i < n; ++i)
        g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

} // namespace qnl
