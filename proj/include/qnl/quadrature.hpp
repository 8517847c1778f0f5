#pragma once

// Adaptive Simpson quadrature with a relative tolerance. Segments handed to
// it are smooth by construction (singular endpoints are removed beforehand by
// a power substitution, see norms.hpp). Non-finite samples short-circuit the
// recursion and propagate: modular integrals evaluated far outside their
// bracket legitimately overflow and the callers only need the sign of
// "greater than 1".

#include <cmath>
#include <limits>

namespace qnl {
namespace detail {

template <typename F>
double adaptive_simpson(F& f, double a, double fa, double b, double fb, double c, double fc,
                        double whole, double eps, int depth) {
    const double m1 = 0.5 * (a + c), m2 = 0.5 * (c + b);
    const double fm1 = f(m1), fm2 = f(m2);
    if (!std::isfinite(fm1) || !std::isfinite(fm2))
        return std::numeric_limits<double>::infinity();
    const double left = (c - a) * (fa + 4.0 * fm1 + fc) / 6.0;
    const double right = (b - c) * (fc + 4.0 * fm2 + fb) / 6.0;
    const double diff = left + right - whole;
    if (depth <= 0 || std::fabs(diff) <= 15.0 * eps * std::max(1.0, std::fabs(left + right)))
        return left + right + diff / 15.0;
    return adaptive_simpson(f, a, fa, c, fc, m1, fm1, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(f, c, fc, b, fb, m2, fm2, right, 0.5 * eps, depth - 1);
}

} // namespace detail

template <typename F>
double integrate(F f, double a, double b, double eps = 1e-12, int max_depth = 28) {
    if (!(b > a)) return 0.0;
    const double c = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fc = f(c);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fc))
        return std::numeric_limits<double>::infinity();
    const double whole = (b - a) * (fa + 4.0 * fc + fb) / 6.0;
    return detail::adaptive_simpson(f, a, fa, b, fb, c, fc, whole, eps, max_depth);
}

} // namespace qnl
