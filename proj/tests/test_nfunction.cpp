#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "qnl/nfunction.hpp"
#include "qnl/rng.hpp"
#include "testutil.hpp"

using namespace qnl;
using qnl_test::rel_err;

TEST_CASE("eval_phi closed forms") {
    CHECK(eval_phi(NFunction::power(2), 3.0) == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(eval_phi(NFunction::power(2), 0.0) == 0.0);
    CHECK(eval_phi(NFunction::power_log(2), 0.0) == 0.0);
    CHECK(eval_phi(NFunction::exp_minus(), 0.0) == 0.0);
    // e - 2
    CHECK(eval_phi(NFunction::exp_minus(), 1.0) ==
          doctest::Approx(0.7182818284590452).epsilon(1e-14));
    // power_log normalization: Phi(1) = 1
    CHECK(eval_phi(NFunction::power_log(3), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(eval_phi(NFunction::power(2), -1.0), domain_error);
    CHECK_THROWS_AS(NFunction::power(1.0), domain_error);
}

TEST_CASE("N-function axioms on a grid") {
    const std::vector<NFunction> phis = {NFunction::power(1.5), NFunction::power(3),
                                         NFunction::power_log(2), NFunction::power_log(1.3),
                                         NFunction::exp_minus()};
    for (const auto& phi : phis) {
        // strictly increasing (cap exp_minus below its overflow point)
        const double top = phi.family == PhiFamily::exp_minus ? 500.0 : 1e3;
        double prev = 0.0;
        for (double t : log_grid(1e-6, top, 200)) {
            const double v = eval_phi(phi, t);
            CHECK(v > prev);
            prev = v;
        }
        // midpoint convexity on random pairs
        Rng rng(7);
        for (int i = 0; i < 200; ++i) {
            const double s = rng.log_uniform(1e-4, 1e2);
            const double t = rng.log_uniform(1e-4, 1e2);
            const double lhs = eval_phi(phi, 0.5 * (s + t));
            const double rhs = 0.5 * (eval_phi(phi, s) + eval_phi(phi, t));
            CHECK(lhs <= rhs * (1.0 + 1e-12));
        }
        // Phi(t)/t -> 0 and -> infinity
        CHECK(eval_phi(phi, 1e-8) / 1e-8 < 1e-3);
        CHECK(eval_phi(phi, phi.family == PhiFamily::exp_minus ? 1e2 : 1e8) /
                  (phi.family == PhiFamily::exp_minus ? 1e2 : 1e8) >
              1e3);
    }
}

TEST_CASE("phi_inverse brackets and bisects") {
    CHECK(phi_inverse(NFunction::power(3), 8.0) == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(phi_inverse(NFunction::power(2), 0.0) == 0.0);
    CHECK(phi_inverse(NFunction::exp_minus(), 0.0) == 0.0);
    // solved independently by bisection on e^t - t - 1 = 1 at 1e-15
    CHECK(phi_inverse(NFunction::exp_minus(), 1.0) ==
          doctest::Approx(1.146193220620582).epsilon(1e-11));
    CHECK_THROWS_AS(phi_inverse(NFunction::power(2),
                                std::numeric_limits<double>::infinity()),
                    domain_error);
    CHECK_THROWS_AS(phi_inverse(NFunction::power(2), -1.0), domain_error);
}

TEST_CASE("phi_inverse inverts eval_phi") {
    const std::vector<NFunction> phis = {NFunction::power(1.5), NFunction::power(4),
                                         NFunction::power_log(2.5), NFunction::exp_minus()};
    Rng rng(11);
    for (const auto& phi : phis) {
        for (int i = 0; i < 100; ++i) {
            const double t = rng.log_uniform(1e-4, phi.family == PhiFamily::exp_minus
                                                       ? 1e2
                                                       : 1e4);
            const double y = eval_phi(phi, t);
            const double back = phi_inverse(phi, y, 1e-12);
            CHECK(rel_err(eval_phi(phi, back), y) <= 1e-11);
        }
    }
}

TEST_CASE("index ratio stays in [1/2, 1]") {
    for (const auto& phi : {NFunction::power(2), NFunction::power_log(2),
                            NFunction::exp_minus()}) {
        for (double t : log_grid(1e-6, 1e6, 500)) {
            const double r = index_ratio(phi, t);
            CHECK(r >= 0.5 - 1e-10);
            CHECK(r <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("orlicz indices of power functions are 2^(-1/p)") {
    for (double p : {1.5, 2.0, 3.0, 4.0, 8.0}) {
        const auto idx = orlicz_indices(NFunction::power(p));
        const double want = std::pow(2.0, -1.0 / p);
        CHECK(rel_err(idx.alpha_bar, want) <= 1e-10);
        CHECK(rel_err(idx.beta_bar, want) <= 1e-10);
        // constant ratio: min and max coincide
        CHECK(std::fabs(idx.alpha_bar - idx.beta_bar) <= 1e-10);
    }
    const auto idx2 = orlicz_indices(NFunction::power(2));
    CHECK(idx2.alpha_bar == doctest::Approx(0.70710678118654752).epsilon(1e-10));
}

TEST_CASE("orlicz indices of exp_minus match the dense-grid oracle") {
    // oracle: 1e5 log-spaced points on [1e-6, 1e6], run independently
    const auto idx = orlicz_indices(NFunction::exp_minus());
    CHECK(std::fabs(idx.alpha_bar - 0.707175800509) <= 1e-6);
    CHECK(std::fabs(idx.beta_bar - 0.952225783978) <= 1e-6);
    CHECK(idx.alpha_bar >= 0.5);
    CHECK(idx.alpha_bar <= idx.beta_bar);
    CHECK(idx.beta_bar <= 1.0);
}

TEST_CASE("ordering invariant holds for every family") {
    for (const auto& phi : {NFunction::power(1.7), NFunction::power_log(3),
                            NFunction::exp_minus()}) {
        const auto idx = orlicz_indices(phi);
        CHECK(0.5 <= idx.alpha_bar);
        CHECK(idx.alpha_bar <= idx.beta_bar);
        CHECK(idx.beta_bar <= 1.0);
        CHECK(idx.argmin_t > 0.0);
        CHECK(idx.argmax_t > 0.0);
    }
}
