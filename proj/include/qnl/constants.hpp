#pragma once

// Ratio functionals behind the geometric constants, plus a seeded supremum
// search over function families. Every functional is a pure function of its
// inputs; the search is deterministic given (seed, budget) even when
// candidate evaluation is spread over threads.
//
//   c1        |lam f + mu g| / (lam|f| + mu|g|)
//   c2        |mu f - lam g| / (mu|f| + lam|g|)
//   nj        (|f+g|^2 + |f-g|^2) / (2(|f|^2 + |g|^2))
//   lyj       (|xi f + eta g|^2 + |eta f - xi g|^2) / ((xi^2+eta^2)(|f|^2+|g|^2))
//   lyj_prime same numerator over 2(|f|^2+|g|^2), unit-norm inputs
//   skew_c    (|lam f + mu g|^2 + |mu f - lam g|^2)
//                 / (c1 c2 (lam^2+mu^2)(|f|^2+|g|^2))
//   skew_cp   the p-th power variant with exponent pexp
//
// skew_c with c1 = c2 = 1 is the "C-free core": the quantity the witness
// constructions actually bound before dividing by the quasi-norm moduli.

#include <cmath>
#include <cstdlib>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qnl/errors.hpp"
#include "qnl/norms.hpp"
#include "qnl/rng.hpp"
#include "qnl/witnesses.hpp"

namespace qnl {

struct SkewParams {
    double lambda = 1.0;
    double mu = 1.0;

    SkewParams() = default;
    SkewParams(double l, double m) : lambda(l), mu(m) {
        if (!(l > 0.0) || !(m > 0.0) || !std::isfinite(l) || !std::isfinite(m))
            throw domain_error("skew parameters must be strictly positive and finite");
    }
};

// ---- ratio functionals ------------------------------------------------------

namespace detail {

inline void require_nonzero_pair(double nf, double ng) {
    if (nf == 0.0 && ng == 0.0)
        throw domain_error("ratio undefined for the zero pair");
}

} // namespace detail

inline double ratio_c1(const PiecewiseFunction& f, const PiecewiseFunction& g,
                       const SkewParams& sk, const SpaceSpec& space) {
    const double nf = norm(f, space), ng = norm(g, space);
    detail::require_nonzero_pair(nf, ng);
    const double den = sk.lambda * nf + sk.mu * ng;
    if (den == 0.0) throw domain_error("ratio_c1: zero denominator");
    return norm(lincomb(sk.lambda, f, sk.mu, g), space) / den;
}

inline double ratio_c2(const PiecewiseFunction& f, const PiecewiseFunction& g,
                       const SkewParams& sk, const SpaceSpec& space) {
    const double nf = norm(f, space), ng = norm(g, space);
    detail::require_nonzero_pair(nf, ng);
    const double den = sk.mu * nf + sk.lambda * ng;
    if (den == 0.0) throw domain_error("ratio_c2: zero denominator");
    return norm(lincomb(sk.mu, f, -sk.lambda, g), space) / den;
}

inline double ratio_nj(const PiecewiseFunction& f, const PiecewiseFunction& g,
                       const SpaceSpec& space) {
    const double nf = norm(f, space), ng = norm(g, space);
    detail::require_nonzero_pair(nf, ng);
    const double np = norm(lincomb(1.0, f, 1.0, g), space);
    const double nm = norm(lincomb(1.0, f, -1.0, g), space);
    return (np * np + nm * nm) / (2.0 * (nf * nf + ng * ng));
}

inline double ratio_lyj(const PiecewiseFunction& f, const PiecewiseFunction& g,
                        const SkewParams& sk, const SpaceSpec& space) {
    const double nf = norm(f, space), ng = norm(g, space);
    detail::require_nonzero_pair(nf, ng);
    const double np = norm(lincomb(sk.lambda, f, sk.mu, g), space);
    const double nm = norm(lincomb(sk.mu, f, -sk.lambda, g), space);
    return (np * np + nm * nm) /
           ((sk.lambda * sk.lambda + sk.mu * sk.mu) * (nf * nf + ng * ng));
}

inline double ratio_lyj_prime(const PiecewiseFunction& f, const PiecewiseFunction& g,
                              const SkewParams& sk, const SpaceSpec& space) {
    const double nf = norm(f, space), ng = norm(g, space);
    if (std::fabs(nf - 1.0) > 1e-8 || std::fabs(ng - 1.0) > 1e-8)
        throw domain_error("ratio_lyj_prime expects unit-norm inputs");
    const double np = norm(lincomb(sk.lambda, f, sk.mu, g), space);
    const double nm = norm(lincomb(sk.mu, f, -sk.lambda, g), space);
    return (np * np + nm * nm) / (2.0 * (nf * nf + ng * ng));
}

inline double ratio_skew_c(const PiecewiseFunction& f, const PiecewiseFunction& g,
                           const SkewParams& sk, const SpaceSpec& space, double c1,
                           double c2) {
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw domain_error("ratio_skew_c: plug-in constants must be positive");
    return ratio_lyj(f, g, sk, space) / (c1 * c2);
}

inline double ratio_skew_cp(const PiecewiseFunction& f, const PiecewiseFunction& g,
                            const SkewParams& sk, const SpaceSpec& space, double c1,
                            double c2, double pexp) {
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw domain_error("ratio_skew_cp: plug-in constants must be positive");
    if (!(pexp >= 1.0)) throw domain_error("ratio_skew_cp: pexp must be >= 1");
    const double nf = norm(f, space), ng = norm(g, space);
    detail::require_nonzero_pair(nf, ng);
    const double np = norm(lincomb(sk.lambda, f, sk.mu, g), space);
    const double nm = norm(lincomb(sk.mu, f, -sk.lambda, g), space);
    const double lp = std::pow(sk.lambda, pexp), mp = std::pow(sk.mu, pexp);
    return (std::pow(np, pexp) + std::pow(nm, pexp)) /
           (c1 * c2 * (lp + mp) * (std::pow(nf, pexp) + std::pow(ng, pexp)));
}

// ---- the seeded supremum search ---------------------------------------------

enum class RatioKind { c1, c2, nj, lyj, lyj_prime, skew_c, skew_cp };

struct RatioSpec {
    RatioKind kind = RatioKind::nj;
    double c1 = 1.0;   // plug-ins for the skew kinds
    double c2 = 1.0;
    double pexp = 2.0; // exponent for skew_cp
};

enum class SampleFamily { step_functions, paper_witnesses, mixed };

struct SearchConfig {
    std::uint64_t seed = 0;
    SampleFamily family = SampleFamily::mixed;
    std::size_t budget = 10000;
    int refine_rounds = 3;
    int k_max = 4;          // pieces per sampled step function
    double value_lo = 1e-2; // log-uniform height range
    double value_hi = 1e2;
    double len_lo = 1e-2; // uniform piece-length range
    double len_hi = 1.0;
};

struct ConstantEstimate {
    double value = 0.0;
    PiecewiseFunction witness_f;
    PiecewiseFunction witness_g;
    SkewParams sk;
    std::size_t candidate_index = 0; // first-found maximum, deterministic
    std::optional<double> lower_bound_paper;
    std::optional<double> upper_bound_paper;
    bool consistent = true;
};

inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QNL_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(std::min<long>(n, hw));
    }
    return hw;
}

namespace detail {

struct StepBlock {
    double lo = 0.0, len = 1.0, height = 1.0;
};

struct StepPair {
    std::vector<StepBlock> f, g;
};

inline PiecewiseFunction build_steps(const std::vector<StepBlock>& blocks) {
    PiecewiseFunction out = PiecewiseFunction::zero();
    for (const auto& b : blocks)
        out = lincomb(1.0, out, 1.0, char_fn(b.lo, b.lo + b.len, b.height));
    return out;
}

inline StepPair random_step_pair(Rng& rng, const SearchConfig& cfg) {
    auto draw = [&](std::vector<StepBlock>& out) {
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.k_max)));
        for (int i = 0; i < k; ++i) {
            StepBlock b;
            b.lo = rng.uniform(0.0, 3.0);
            b.len = rng.uniform(cfg.len_lo, cfg.len_hi);
            b.height = rng.log_uniform(cfg.value_lo, cfg.value_hi);
            if (rng.coin()) b.height = -b.height;
            out.push_back(b);
        }
    };
    StepPair p;
    draw(p.f);
    draw(p.g);
    return p;
}

inline double eval_ratio(const RatioSpec& r, const PiecewiseFunction& f,
                         const PiecewiseFunction& g, const SkewParams& sk,
                         const SpaceSpec& space) {
    switch (r.kind) {
    case RatioKind::c1: return ratio_c1(f, g, sk, space);
    case RatioKind::c2: return ratio_c2(f, g, sk, space);
    case RatioKind::nj: return ratio_nj(f, g, space);
    case RatioKind::lyj: return ratio_lyj(f, g, sk, space);
    case RatioKind::lyj_prime: return ratio_lyj_prime(f, g, sk, space);
    case RatioKind::skew_c: return ratio_skew_c(f, g, sk, space, r.c1, r.c2);
    case RatioKind::skew_cp: return ratio_skew_cp(f, g, sk, space, r.c1, r.c2, r.pexp);
    }
    throw domain_error("unknown ratio kind");
}

// Extremal pairs carried over from the audited proofs, instantiated for
// the space at hand. Pairs whose norms diverge in this space are filtered by
// the caller through the usual try/evaluate path.
inline std::vector<std::pair<PiecewiseFunction, PiecewiseFunction>>
witness_pairs(const SpaceSpec& space, const SkewParams& sk) {
    std::vector<std::pair<PiecewiseFunction, PiecewiseFunction>> out;
    out.emplace_back(char_fn(0.0, 1.0, 1.0), char_fn(1.0, 2.0, 1.0));
    out.emplace_back(char_fn(0.0, 1.0, 1.0), char_fn(0.0, 1.0, 1.0));

    NFunction phi = NFunction::power(2.0);
    if (space.kind == SpaceKind::lp || space.kind == SpaceKind::weak_lp)
        phi = NFunction::power(space.p);
    else
        phi = space.phi;

    std::vector<double> levels{0.5, 1.0, 2.0};
    if (phi.family != PhiFamily::power) {
        const auto idx = orlicz_indices(phi);
        levels.push_back(idx.argmin_t);
        levels.push_back(idx.argmax_t);
    }
    for (double t0 : levels) {
        const auto fp = witness::ball_f_pair(phi, t0);
        out.emplace_back(fp.a, fp.b);
        const auto gp = witness::ball_g_pair(phi, t0);
        out.emplace_back(gp.a, gp.b);
    }
    if (phi.family == PhiFamily::power) {
        const double p = phi.p;
        out.emplace_back(witness::f1(p), witness::g1(p));
        out.emplace_back(witness::h1(p, sk.lambda, sk.mu), witness::h2(p, sk.lambda, sk.mu));
    }
    return out;
}

} // namespace detail

inline ConstantEstimate estimate(const RatioSpec& ratio, const SpaceSpec& space,
                                 const SkewParams& sk, const SearchConfig& cfg) {
    if (cfg.budget < 1) throw domain_error("estimate: budget must be >= 1");

    const auto witnesses =
        cfg.family == SampleFamily::step_functions
            ? std::vector<std::pair<PiecewiseFunction, PiecewiseFunction>>{}
            : detail::witness_pairs(space, sk);
    const bool sample_steps = cfg.family != SampleFamily::paper_witnesses;
    const std::size_t total = cfg.family == SampleFamily::paper_witnesses
                                  ? witnesses.size()
                                  : cfg.budget;

    struct Best {
        double value = -1.0;
        std::size_t index = 0;
        PiecewiseFunction f, g;
        bool valid = false;
        detail::StepPair params;
        bool is_step = false;
    };

    auto run_range = [&](std::size_t lo, std::size_t hi) {
        Best best;
        for (std::size_t i = lo; i < hi; ++i) {
            PiecewiseFunction f, g;
            detail::StepPair params;
            bool is_step = false;
            try {
                if (i < witnesses.size()) {
                    f = witnesses[i].first;
                    g = witnesses[i].second;
                } else if (sample_steps) {
                    Rng rng = Rng::for_index(cfg.seed, i);
                    params = detail::random_step_pair(rng, cfg);
                    f = detail::build_steps(params.f);
                    g = detail::build_steps(params.g);
                    is_step = true;
                } else {
                    break;
                }
                const double v = detail::eval_ratio(ratio, f, g, sk, space);
                if (std::isfinite(v) && (!best.valid || v > best.value)) {
                    best = Best{v, i, f, g, true, params, is_step};
                }
            } catch (const divergence_error&) {
            } catch (const domain_error&) {
            } catch (const unsupported_combination_error&) {
            }
        }
        return best;
    };

    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(total, 1)));
    std::vector<std::future<Best>> futs;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, run_range, lo, hi));
    }
    Best best;
    for (auto& fu : futs) {
        Best b = fu.get();
        if (!b.valid) continue;
        // max value, first index on ties
        if (!best.valid || b.value > best.value ||
            (b.value == best.value && b.index < best.index))
            best = b;
    }
    if (!best.valid) throw search_failure_error("estimate: no valid candidate");

    // coordinate-wise multiplicative perturbation around the best step pair
    if (best.is_step) {
        const double deltas[3] = {0.25, 0.05, 0.01};
        for (int round = 0; round < cfg.refine_rounds; ++round) {
            const double d = deltas[round % 3];
            auto& blocks_f = best.params.f;
            auto& blocks_g = best.params.g;
            for (auto* blocks : {&blocks_f, &blocks_g}) {
                for (auto& b : *blocks) {
                    for (double* coord : {&b.height, &b.len, &b.lo}) {
                        for (double factor : {1.0 + d, 1.0 - d, -1.0}) {
                            if (factor == -1.0 && coord != &b.height) continue;
                            const double saved = *coord;
                            *coord = saved * factor;
                            bool improved = false;
                            try {
                                const auto f = detail::build_steps(best.params.f);
                                const auto g = detail::build_steps(best.params.g);
                                const double v = detail::eval_ratio(ratio, f, g, sk, space);
                                if (std::isfinite(v) && v > best.value) {
                                    best.value = v;
                                    best.f = f;
                                    best.g = g;
                                    improved = true;
                                }
                            } catch (const std::runtime_error&) {
                            }
                            if (!improved) *coord = saved;
                        }
                    }
                }
            }
        }
    }

    ConstantEstimate out;
    out.value = best.value;
    out.witness_f = best.f;
    out.witness_g = best.g;
    out.sk = sk;
    out.candidate_index = best.index;
    return out;
}

// ---- printed closed-form bounds from the audited source ----------------------

enum class ConstantId { cp1, cp2, cnj_lp, lyjc_wlp, lyjcp_wlp };

struct PaperBounds {
    std::optional<double> lower;
    std::optional<double> upper;
    bool lower_over_c1c2 = false; // lower bound is stated as <value>/(C1*C2)

    bool consistent() const {
        if (!lower || !upper) return true;
        return *lower <= *upper * (1.0 + 1e-12);
    }
};

inline PaperBounds paper_bounds(ConstantId id, double p, const SkewParams& sk,
                                std::optional<double> pexp = std::nullopt) {
    if (!(p > 1.0)) throw domain_error("paper_bounds: p must be > 1");
    const double lam = sk.lambda, mu = sk.mu;
    PaperBounds b;
    switch (id) {
    case ConstantId::cp1:
        b.lower = std::pow(lam + mu, 1.0 / p);
        b.upper = std::min(2.0, p / (p - 1.0));
        return b;
    case ConstantId::cp2:
        b.lower = std::pow(std::fabs(mu - lam), 1.0 + 1.0 / p) / (lam + mu);
        b.upper = std::min(2.0, p / (p - 1.0));
        return b;
    case ConstantId::cnj_lp: {
        const double v = std::max(std::pow(2.0, 2.0 / p - 1.0), std::pow(2.0, 1.0 - 2.0 / p));
        b.lower = v;
        b.upper = v;
        return b;
    }
    case ConstantId::lyjc_wlp:
        b.lower = std::max(std::pow(2.0, 2.0 / p), std::pow(2.0, 1.0 - 2.0 / p));
        b.lower_over_c1c2 = true;
        return b;
    case ConstantId::lyjcp_wlp: {
        const double q = pexp.value_or(p);
        if (!(q >= 1.0)) throw domain_error("paper_bounds: pexp must be >= 1");
        const double first = (std::pow(lam + mu, q) + std::pow(std::fabs(mu - lam), q)) /
                             (std::pow(lam, q) + std::pow(mu, q));
        b.lower = std::max(first, std::pow(2.0, q - 2.0));
        b.lower_over_c1c2 = true;
        return b;
    }
    }
    throw domain_error("paper_bounds: unknown constant id");
}

inline std::string to_string(RatioKind k) {
    switch (k) {
    case RatioKind::c1: return "c1";
    case RatioKind::c2: return "c2";
    case RatioKind::nj: return "nj";
    case RatioKind::lyj: return "lyj";
    case RatioKind::lyj_prime: return "lyj-prime";
    case RatioKind::skew_c: return "lyjc";
    case RatioKind::skew_cp: return "lyjcp";
    }
    return "?";
}

} // namespace qnl
