#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "qnl/oracle.hpp"
#include "qnl/piecewise.hpp"
#include "qnl/rng.hpp"
#include "qnl/witnesses.hpp"
#include "testutil.hpp"

using namespace qnl;
using qnl_test::rel_err;

using qnl_test::random_step;

TEST_CASE("char_fn basics") {
    const auto chi = char_fn(0.0, 1.0, 1.0);
    CHECK(chi(0.5) == 1.0);
    CHECK(chi(1.5) == 0.0);
    CHECK(chi.support_measure() == doctest::Approx(1.0));
    CHECK(char_fn(0.0, 1.0, 0.0).is_zero());
    CHECK_THROWS_AS(char_fn(1.0, 1.0, 2.0), domain_error);
    CHECK_THROWS_AS(char_fn(2.0, 1.0, 2.0), domain_error);

    // constant sqrt(2) on (2,3): height Phi^{-1}(2 t0) with Power(2), t0 = 1
    const double h = phi_inverse(NFunction::power(2), 2.0);
    const auto c = char_fn(2.0, 3.0, h);
    CHECK(c(2.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("lincomb merges and cancels") {
    const auto step = lincomb(1.0, char_fn(0.0, 1.0, 1.0), 1.0, char_fn(1.0, 2.0, 1.0));
    CHECK(step(0.5) == 1.0);
    CHECK(step(1.5) == 1.0);
    CHECK(step.pieces().size() == 1); // adjacent equal constants merge

    const auto zero = lincomb(1.0, char_fn(0.0, 1.0, 1.0), -1.0, char_fn(0.0, 1.0, 1.0));
    CHECK(zero.is_zero());

    const auto h1 = witness::h1(2.0, 1.0, 1.0);
    CHECK(h1.pieces().size() == 1);
    CHECK(h1.pieces()[0].terms.size() == 2);
    CHECK(h1(0.25) == doctest::Approx(2.0 + 2.0 / std::sqrt(3.0)).epsilon(1e-12));

    // stacked overlapping constants: 2 on (0,1), 1 on (1,2)
    const auto stacked = lincomb(1.0, char_fn(0.0, 1.0, 1.0),
                                 1.0, lincomb(1.0, char_fn(0.0, 1.0, 1.0), 1.0,
                                              char_fn(1.0, 2.0, 1.0)));
    CHECK(stacked(0.5) == 2.0);
    CHECK(stacked(1.5) == 1.0);
}

TEST_CASE("term cap is enforced") {
    // five distinct power terms on one interval
    auto f = witness::h1(2.0, 1.0, 1.0);                  // 2 terms
    f = lincomb(1.0, f, 1.0, witness::h1(3.0, 1.0, 1.0)); // 4 terms
    CHECK(f.pieces()[0].terms.size() == 4);
    CHECK_THROWS_AS(lincomb(1.0, f, 1.0, witness::f1(4.0)), unsupported_combination_error);
}

TEST_CASE("distribution of steps and powers") {
    const auto chi = char_fn(0.0, 1.0, 1.0);
    CHECK(chi.dist_strict(0.5) == 1.0);
    CHECK(chi.dist_strict(1.5) == 0.0);
    CHECK(chi.dist_strict(1.0) == 0.0);
    CHECK(chi.dist_weak(1.0) == 1.0);

    for (double p : {1.5, 2.0, 4.0}) {
        const auto f = witness::f1(p);
        for (double t : {0.25, 0.5, 1.0, 2.0, 7.5}) {
            const double want = std::min(1.0, std::pow(t, -p));
            CHECK(rel_err(f.dist_strict(t), want) <= 1e-12);
        }
    }
}

TEST_CASE("distribution of h1 at the quarter point") {
    // symmetry about 1/2: {h1 > h1(1/4)} = (0,1/4) u (3/4,1), measure 1/2
    const auto h1 = witness::h1(2.0, 1.0, 1.0);
    const double level = h1(0.25);
    CHECK(rel_err(h1.dist_strict(level), 0.5) <= 1e-10);
    // dense-grid oracle agrees
    DenseOracle oracle(h1, OracleConfig{200000, 8000, 26});
    CHECK(std::fabs(oracle.dist(level) - 0.5) <= 1e-4);
}

TEST_CASE("distribution is nonincreasing") {
    Rng rng(3);
    for (int it = 0; it < 25; ++it) {
        const auto f = random_step(rng, 4, true);
        double prev = f.dist_strict(0.0);
        for (double t : log_grid(1e-3, 1e3, 60)) {
            const double cur = f.dist_strict(t);
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
    const auto h = witness::h1(2.0, 1.0, 2.0);
    double prev = h.dist_strict(0.0);
    for (double t : log_grid(1e-2, 1e4, 120)) {
        const double cur = h.dist_strict(t);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("disjoint supports add distributions") {
    Rng rng(5);
    for (int it = 0; it < 20; ++it) {
        const double a = rng.uniform(0.0, 1.0), b = a + rng.uniform(0.1, 1.0);
        const double c = b + rng.uniform(0.1, 1.0), d = c + rng.uniform(0.1, 1.0);
        const auto f = char_fn(a, b, rng.log_uniform(0.1, 10.0));
        const auto g = char_fn(c, d, rng.log_uniform(0.1, 10.0));
        const auto s = lincomb(1.0, f, 1.0, g);
        for (double t : log_grid(1e-2, 20.0, 40)) {
            CHECK(std::fabs(s.dist_strict(t) - f.dist_strict(t) - g.dist_strict(t)) <=
                  1e-12);
        }
    }
}

TEST_CASE("scaling moves levels exactly") {
    const auto f = lincomb(1.0, char_fn(0.0, 1.0, 2.0), 1.0, char_fn(1.5, 2.0, 0.5));
    for (double c : {3.0, -2.0, 0.25}) {
        const auto g = scaled(c, f);
        for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
            CHECK(g.dist_strict(t) == f.dist_strict(t / std::fabs(c)));
            CHECK(g.dist_weak(t) == f.dist_weak(t / std::fabs(c)));
        }
    }
}

TEST_CASE("sign-changing functions split at the crossing") {
    const auto h2 = witness::h2(2.0, 1.0, 2.0); // 2 x^(-1/2) - (1-x)^(-1/2)
    // crossing: 4(1-x) = x  ->  x = 4/5
    CHECK(h2(0.79) > 0.0);
    CHECK(h2(0.81) < 0.0);
    CHECK(h2.segments().size() == 2);
    const double x0 = h2.segments()[0].hi;
    CHECK(x0 == doctest::Approx(0.8).epsilon(1e-10));
    // |h2| superlevel sets: two shrinking tails
    const double t = 10.0;
    const double left = std::pow(2.0 / t, 2.0); // approx; the engine must be close
    CHECK(h2.dist_strict(t) == doctest::Approx(left + 1.0 / (t * t)).epsilon(0.2));
}

TEST_CASE("rearrangement integral closed cases") {
    const auto chi = char_fn(0.0, 1.0, 1.0);
    CHECK(chi.rearrangement_integral(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(chi.rearrangement_integral(0.0) == 0.0);
    CHECK(chi.rearrangement_integral(5.0) == doctest::Approx(1.0).epsilon(1e-12));

    // integral_0^1 s^(-1/2) ds = 2
    const auto f = witness::f1(2.0);
    CHECK(rel_err(f.rearrangement_integral(1.0), 2.0) <= 1e-10);

    // h1 at lam = mu = 1, p = 2: f*(s) = h1(s/2), so R(1/2) = 6 - 2 sqrt(3)
    const auto h1 = witness::h1(2.0, 1.0, 1.0);
    const double analytic = 6.0 - 2.0 * std::sqrt(3.0);
    CHECK(rel_err(h1.rearrangement_integral(0.5), analytic) <= 1e-8);
    DenseOracle oracle(h1, OracleConfig{400000, 8000, 26});
    CHECK(rel_err(oracle.rearrangement(0.5), analytic) <= 1e-4);
}

TEST_CASE("rearrangement integral is nondecreasing and concave in m") {
    Rng rng(9);
    std::vector<PiecewiseFunction> fns;
    for (int i = 0; i < 8; ++i) fns.push_back(random_step(rng, 4, true));
    fns.push_back(witness::h1(2.0, 1.0, 2.0));
    fns.push_back(witness::h2(3.0, 2.0, 1.0));
    for (const auto& f : fns) {
        const double M = f.support_measure();
        std::vector<double> r;
        const int n = 24;
        for (int i = 1; i <= n; ++i)
            r.push_back(f.rearrangement_integral(M * i / static_cast<double>(n)));
        for (int i = 1; i < n; ++i) CHECK(r[i] >= r[i - 1] - 1e-10);
        for (int i = 1; i + 1 < n; ++i)
            CHECK(r[i + 1] - r[i] <= r[i] - r[i - 1] + 1e-8 * std::max(1.0, r[i]));
    }
}

TEST_CASE("engine matches the dense oracle on witness functions") {
    const OracleConfig quick{200000, 8000, 26};
    std::vector<PiecewiseFunction> fns = {
        witness::f1(2.0), witness::h1(2.0, 1.0, 1.0), witness::h1(1.5, 1.0, 2.0),
        witness::h2(2.0, 1.0, 1.0), witness::h2(4.0, 2.0, 1.0)};
    for (const auto& f : fns) {
        DenseOracle oracle(f, quick);
        const double M = f.support_measure();
        for (double frac : {0.1, 0.3, 0.5, 0.9}) {
            const double m = M * frac;
            CHECK(rel_err(f.rearrangement_integral(m), oracle.rearrangement(m)) <= 1e-4);
        }
        for (double t : {0.5, 1.0, 3.0, 10.0}) {
            CHECK(std::fabs(f.dist_strict(t) - oracle.dist(t)) <= 1e-4 * std::max(1.0, M));
        }
    }
    // one case at the full sampling budget
    const auto h = witness::h1(1.5, 1.0, 2.0); // q = 2/3, the hardest tail
    DenseOracle full(h, OracleConfig{1000000, 20000, 26});
    for (double frac : {0.2, 0.5, 0.8})
        CHECK(rel_err(h.rearrangement_integral(frac), full.rearrangement(frac)) <= 1e-4);
}
