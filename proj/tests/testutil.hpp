#pragma once

#include <algorithm>
#include <cmath>

#include "qnl/piecewise.hpp"
#include "qnl/rng.hpp"

namespace qnl_test {

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

inline double rel_err_strict(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

// random step function with at most k pieces on [0, 3]
inline qnl::PiecewiseFunction random_step(qnl::Rng& rng, int k_max = 4, bool signs = false) {
    qnl::PiecewiseFunction f = qnl::PiecewiseFunction::zero();
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k_max)));
    for (int i = 0; i < k; ++i) {
        const double lo = rng.uniform(0.0, 3.0);
        const double len = rng.uniform(1e-2, 1.0);
        double h = rng.log_uniform(1e-2, 1e2);
        if (signs && rng.coin()) h = -h;
        f = qnl::lincomb(1.0, f, 1.0, qnl::char_fn(lo, lo + len, h));
    }
    return f;
}

} // namespace qnl_test
