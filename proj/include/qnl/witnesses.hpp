#pragma once

// The concrete extremal functions used throughout: the power pair on (0,1)
// and the disjoint-interval characteristic pairs built from Phi^{-1} levels.
// Ball constructions are reduced to intervals: only set measures enter any
// of the estimates, so the unit-ball measure is fixed at 2 (n = 1) and a
// "ball of radius r" is an interval of length 2r = 1/(2 t0).

#include <cmath>

#include "qnl/nfunction.hpp"
#include "qnl/piecewise.hpp"

namespace qnl::witness {

// x^(-1/p) restricted to (0,1)
inline PiecewiseFunction f1(double p) { return power_left_fn(0.0, 1.0, 1.0, 1.0 / p); }

// (1-x)^(-1/p) restricted to (0,1)
inline PiecewiseFunction g1(double p) { return power_right_fn(0.0, 1.0, 1.0, 1.0 / p); }

inline PiecewiseFunction h1(double p, double lam, double mu) {
    return lincomb(lam, f1(p), mu, g1(p));
}

inline PiecewiseFunction h2(double p, double lam, double mu) {
    return lincomb(mu, f1(p), -lam, g1(p));
}

// Two disjoint equal-measure intervals carrying the level Phi^{-1}(2 t0);
// each has measure 1/(2 t0), their union 1/t0.
struct CharPair {
    PiecewiseFunction a;
    PiecewiseFunction b;
    double level = 0.0;
    double width = 0.0;
};

inline CharPair ball_f_pair(const NFunction& phi, double t0) {
    const double w = 1.0 / (2.0 * t0);
    const double c = phi_inverse(phi, 2.0 * t0, 1e-14);
    CharPair out;
    out.level = c;
    out.width = w;
    out.a = char_fn(0.0, w, c);
    out.b = char_fn(2.0 * w, 3.0 * w, c);
    return out;
}

// The mirrored pair Phi^{-1}(u0)(chi_1 + chi_2) and Phi^{-1}(u0)(chi_1 - chi_2)
// on intervals of measure 1/(2 u0) each.
inline CharPair ball_g_pair(const NFunction& phi, double u0) {
    const double w = 1.0 / (2.0 * u0);
    const double c = phi_inverse(phi, u0, 1e-14);
    CharPair out;
    out.level = c;
    out.width = w;
    out.a = lincomb(1.0, char_fn(0.0, w, c), 1.0, char_fn(2.0 * w, 3.0 * w, c));
    out.b = lincomb(1.0, char_fn(0.0, w, c), -1.0, char_fn(2.0 * w, 3.0 * w, c));
    return out;
}

} // namespace qnl::witness
