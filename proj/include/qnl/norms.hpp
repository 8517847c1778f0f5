#pragma once

// The four quasi-norms on PiecewiseFunctions:
//
//   lp           ( integral |f|^p )^(1/p)
//   weak_lp      sup_{t>0} t * |{|f| > t}|^(1/p)
//   orlicz       Luxemburg gauge  inf{ b : integral Phi(|f|/b) <= 1 }
//   weak_orlicz  sup_{t>0} t / Phi^{-1}( 1 / |{|f| > t}| )
//
// plus the Kolmogorov-type functional
//
//   sup_{0<m<=M} m^(1/p - 1) * integral_0^m f*(s) ds.
//
// Strong norms of non-integrable inputs raise divergence_error instead of
// returning infinity; weak norms do the same when the tail level objective
// is unbounded (power tail exponent q*p > 1, or any singularity in the
// exp_minus family), since no finite supremum exists then.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qnl/errors.hpp"
#include "qnl/nfunction.hpp"
#include "qnl/piecewise.hpp"
#include "qnl/quadrature.hpp"
#include "qnl/solvers.hpp"

namespace qnl {

enum class SpaceKind { lp, weak_lp, orlicz, weak_orlicz };

struct SpaceSpec {
    SpaceKind kind = SpaceKind::lp;
    double p = 2.0;     // lp / weak_lp exponent
    NFunction phi;      // orlicz / weak_orlicz Young function
    double quasi_modulus = 1.0; // constant C of the quasi-triangle inequality

    static SpaceSpec lp(double p) {
        require_p(p);
        return SpaceSpec{SpaceKind::lp, p, {}, 1.0};
    }
    static SpaceSpec weak_lp(double p) {
        require_p(p);
        return SpaceSpec{SpaceKind::weak_lp, p, {}, 2.0};
    }
    static SpaceSpec orlicz(const NFunction& phi) {
        return SpaceSpec{SpaceKind::orlicz, 0.0, phi, 1.0};
    }
    static SpaceSpec weak_orlicz(const NFunction& phi) {
        return SpaceSpec{SpaceKind::weak_orlicz, 0.0, phi, 2.0};
    }

    bool weak() const { return kind == SpaceKind::weak_lp || kind == SpaceKind::weak_orlicz; }

    bool operator==(const SpaceSpec&) const = default;

private:
    static void require_p(double p) {
        if (!(p > 1.0) || !std::isfinite(p)) throw domain_error("space exponent must be > 1");
    }
};

struct WeakSupConfig {
    std::size_t grid_per_gap = 512; // log-grid points between breakpoint levels
    std::size_t probes_per_segment = 64;
    int golden_iters = 120;
};

namespace detail {

constexpr double kExponentEps = 1e-12;

// Power-growth exponent of the modular: |f|^beta is what the integrals and
// tails effectively see. exp_minus has no polynomial bound, flagged by beta=0.
inline double growth_exponent(const NFunction& phi) {
    return phi.family == PhiFamily::exp_minus ? 0.0 : phi.p;
}

inline void check_strong_divergence(const PiecewiseFunction& f, const NFunction& phi,
                                    const char* who) {
    if (!f.has_singularity()) return;
    if (phi.family == PhiFamily::exp_minus)
        throw divergence_error(std::string(who) + ": modular diverges (exp_minus, unbounded f)");
    const double qp = f.max_singular_exponent() * phi.p;
    if (qp >= 1.0 - kExponentEps)
        throw divergence_error(std::string(who) + ": non-integrable singularity (q*p >= 1)");
}

// Weak-space tail: objective ~ t^(1 - 1/(q*beta)). Returns the analytic
// boundary limit when q*beta == 1 for exact-power growth, throws when the
// tail is unbounded.
inline double weak_tail_limit(const PiecewiseFunction& f, const NFunction& phi,
                              const char* who) {
    if (!f.has_singularity()) return 0.0;
    if (phi.family == PhiFamily::exp_minus)
        throw divergence_error(std::string(who) +
                               ": weak norm diverges (exp_minus, unbounded f)");
    const double beta = phi.p;
    const double qmax = f.max_singular_exponent();
    const double qb = qmax * beta;
    if (qb > 1.0 + kExponentEps)
        throw divergence_error(std::string(who) + ": weak norm diverges (q*p > 1 tail)");
    if (std::fabs(qb - 1.0) <= kExponentEps) {
        if (phi.family == PhiFamily::power_log)
            throw divergence_error(std::string(who) +
                                   ": weak norm diverges (log factor at q*p = 1)");
        double s = 0.0;
        for (const auto& a : f.singular_anchors())
            if (a.q >= qmax - kExponentEps) s += std::pow(a.coeff, 1.0 / a.q);
        return std::pow(s, 1.0 / beta);
    }
    return 0.0; // tail objective -> 0
}

// Supremum over t>0 of obj(t, strict measure | weak measure). obj must be
// continuous in t between distribution breakpoints and use the measure
// monotonically.
template <typename Obj>
double weak_sup(const PiecewiseFunction& f, Obj obj, double tail_limit,
                const WeakSupConfig& cfg) {
    double best = std::max(tail_limit, 0.0);

    auto consider_weak = [&](double t) {
        if (!(t > 0.0) || !std::isfinite(t)) return;
        const double m = f.dist_weak(t);
        if (m > 0.0) best = std::max(best, obj(t, m));
    };

    const auto breaks = f.level_breakpoints();
    if (f.all_const()) {
        // exact: the objective is increasing in t on each flat branch of the
        // distribution, so the per-level left limits realize the sup
        for (double b : breaks) consider_weak(b);
        return best;
    }

    std::vector<double> anchors = breaks;
    for (double v : f.level_probes(cfg.probes_per_segment)) anchors.push_back(v);
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

    double best_t = 0.0, best_val = -1.0;
    auto track = [&](double t, double v) {
        if (v > best_val) {
            best_val = v;
            best_t = t;
        }
    };
    for (double b : breaks) {
        consider_weak(b);
        const double m = f.dist_strict(b);
        if (m > 0.0) track(b, obj(b, m));
    }
    for (double a : anchors) {
        const double m = f.dist_strict(a);
        if (m > 0.0) track(a, obj(a, m));
    }
    // log grid between consecutive breakpoint levels
    std::vector<double> gaps = breaks;
    if (gaps.empty() && !anchors.empty()) gaps = {anchors.front(), anchors.back()};
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
        if (!(gaps[i + 1] > gaps[i] * (1.0 + 1e-14))) continue;
        for (double t : log_grid(gaps[i], gaps[i + 1], cfg.grid_per_gap)) {
            const double m = f.dist_strict(t);
            if (m > 0.0) track(t, obj(t, m));
        }
    }
    // ladder above the highest finite level for singular tails; capped at
    // 1e6 x scale where tail measures are still resolvable in doubles, the
    // analytic tail_limit covers the boundary-exponent case beyond
    if (f.has_singularity()) {
        const double top = std::max(f.finite_value_scale(), 1.0);
        for (double factor : {3e0, 1e1, 3e1, 1e2, 1e3, 1e4, 1e5, 1e6}) {
            const double t = top * factor;
            const double m = f.dist_strict(t);
            if (m > 0.0) track(t, obj(t, m));
        }
    }
    best = std::max(best, best_val);

    // golden refinement around the best smooth candidate
    if (best_val > 0.0 && best_t > 0.0) {
        double lo = best_t, hi = best_t;
        for (double a : anchors) {
            if (a < best_t) lo = a;
            if (a > best_t) {
                hi = a;
                break;
            }
        }
        if (lo < best_t) lo = std::max(lo, best_t * 0.25);
        else lo = best_t * 0.5;
        if (hi <= best_t) hi = best_t * 2.0;
        auto g = [&](double t) {
            const double m = f.dist_strict(t);
            return m > 0.0 ? obj(t, m) : 0.0;
        };
        const double t_ref = golden_max(g, lo, hi, cfg.golden_iters);
        best = std::max(best, g(t_ref));
    }
    return best;
}

// integral of G(|f(x)|) over one monotone segment, with a power substitution
// that removes the endpoint singularity when present. gp bounds the growth
// G(v) <~ v^gp near v = infinity and must satisfy q*gp < 1.
template <typename G>
double segment_modular(const PiecewiseFunction& f, const MonoSegment& seg, G big_g,
                       double gp, double eps) {
    if (seg.is_const) return big_g(seg.const_abs) * seg.len();
    auto h = [&](double x) { return big_g(std::fabs(f.eval_in_piece(seg.piece, x))); };
    const bool sing_lo = std::isinf(seg.abs_lo);
    const bool sing_hi = std::isinf(seg.abs_hi);
    if (!sing_lo && !sing_hi) return integrate(h, seg.lo, seg.hi, eps);

    // exactly one singular end on a monotone segment
    double q = 0.0;
    for (const auto& t : f.pieces()[seg.piece].terms)
        if (t.kind != TermKind::constant) q = std::max(q, t.q);
    const double s = 5.0 / (1.0 - q * gp);
    const double w = seg.len();
    const double umax = std::pow(w, 1.0 / s);
    auto sub = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double d = std::pow(u, s);
        const double x = sing_lo ? seg.lo + d : seg.hi - d;
        const double v = h(x);
        return std::isfinite(v) ? v * s * std::pow(u, s - 1.0) : 0.0;
    };
    return integrate(sub, 0.0, umax, eps);
}

} // namespace detail

// ---- strong norms -----------------------------------------------------------

inline double lp_norm(const PiecewiseFunction& f, double p) {
    if (!(p > 1.0)) throw domain_error("lp_norm: p must be > 1");
    if (f.is_zero()) return 0.0;
    detail::check_strong_divergence(f, NFunction::power(p), "lp_norm");
    double total = 0.0;
    for (const auto& seg : f.segments()) {
        const auto& terms = f.pieces()[seg.piece].terms;
        if (terms.size() == 1 && terms[0].kind != TermKind::constant) {
            // exact: integral |c|^p (x-a)^(-qp)
            const Term& t = terms[0];
            const double e = 1.0 - t.q * p;
            const double c = std::pow(std::fabs(t.coeff), p) / e;
            const double d1 = t.kind == TermKind::power_left ? seg.lo - t.anchor
                                                             : t.anchor - seg.hi;
            const double d2 = t.kind == TermKind::power_left ? seg.hi - t.anchor
                                                             : t.anchor - seg.lo;
            total += c * (std::pow(d2, e) - std::pow(d1, e));
            continue;
        }
        total += detail::segment_modular(
            f, seg, [&](double v) { return std::pow(v, p); }, p, 1e-12);
    }
    return std::pow(total, 1.0 / p);
}

// Modular integral M(b) = integral Phi(|f|/b).
inline double orlicz_modular(const PiecewiseFunction& f, const NFunction& phi, double b) {
    if (!(b > 0.0)) throw domain_error("orlicz_modular: b must be > 0");
    const double gp = detail::growth_exponent(phi);
    double total = 0.0;
    for (const auto& seg : f.segments())
        total += detail::segment_modular(
            f, seg, [&](double v) { return eval_phi(phi, v / b); }, gp, 1e-12);
    return total;
}

inline double luxemburg_norm(const PiecewiseFunction& f, const NFunction& phi,
                             double tol = 1e-10) {
    if (!(tol > 0.0)) throw domain_error("luxemburg_norm: tol must be > 0");
    if (f.is_zero()) return 0.0;
    detail::check_strong_divergence(f, phi, "luxemburg_norm");

    const double scale = std::max(f.finite_value_scale(), 1e-30);
    double lo = 1e-9 * scale, hi = 1e9 * scale;
    int guard = 0;
    while (orlicz_modular(f, phi, lo) <= 1.0 && guard++ < 200) lo *= 1e-3;
    guard = 0;
    while (orlicz_modular(f, phi, hi) > 1.0 && guard++ < 200) hi *= 1e3;

    double b = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        b = 0.5 * (lo + hi);
        const double m = orlicz_modular(f, phi, b);
        if (std::fabs(m - 1.0) <= tol) return b;
        if (m > 1.0)
            lo = b;
        else
            hi = b;
    }
    return b;
}

// ---- weak norms -------------------------------------------------------------

inline double weak_lp_norm(const PiecewiseFunction& f, double p,
                           const WeakSupConfig& cfg = {}) {
    if (!(p > 1.0)) throw domain_error("weak_lp_norm: p must be > 1");
    if (f.is_zero()) return 0.0;
    const double tail = detail::weak_tail_limit(f, NFunction::power(p), "weak_lp_norm");
    const double inv_p = 1.0 / p;
    return detail::weak_sup(
        f, [&](double t, double m) { return t * std::pow(m, inv_p); }, tail, cfg);
}

inline double weak_orlicz_norm(const PiecewiseFunction& f, const NFunction& phi,
                               const WeakSupConfig& cfg = {}) {
    if (f.is_zero()) return 0.0;
    const double tail = detail::weak_tail_limit(f, phi, "weak_orlicz_norm");
    return detail::weak_sup(
        f,
        [&](double t, double m) { return t / phi_inverse(phi, 1.0 / m, 1e-12); },
        tail, cfg);
}

// sup_E |E|^(1/p - 1) integral_E |f|, realized through the decreasing
// rearrangement: the inner sup over sets of measure m is integral_0^m f*.
inline double kolmogorov_functional(const PiecewiseFunction& f, double p,
                                    const WeakSupConfig& cfg = {}) {
    if (!(p > 1.0)) throw domain_error("kolmogorov_functional: p must be > 1");
    if (f.is_zero()) return 0.0;
    const double M = f.support_measure();
    const double e = 1.0 / p - 1.0;
    auto obj = [&](double m) {
        return m > 0.0 ? std::pow(m, e) * f.rearrangement_integral(m) : 0.0;
    };

    double best = obj(M), best_m = M;
    auto track = [&](double m) {
        if (!(m > 0.0) || m > M) return;
        const double v = obj(m);
        if (v > best) {
            best = v;
            best_m = m;
        }
    };
    for (double b : f.level_breakpoints()) {
        track(f.dist_strict(b));
        track(f.dist_weak(b));
    }
    for (double m : log_grid(M * 1e-9, M, 256)) track(m);
    const double lo = std::max(best_m * 0.5, M * 1e-12);
    const double hi = std::min(best_m * 2.0, M);
    const double m_ref = golden_max(obj, lo, hi, cfg.golden_iters);
    best = std::max(best, obj(m_ref));
    return best;
}

// ---- dispatch ---------------------------------------------------------------

inline double norm(const PiecewiseFunction& f, const SpaceSpec& space,
                   const WeakSupConfig& cfg = {}) {
    switch (space.kind) {
    case SpaceKind::lp: return lp_norm(f, space.p);
    case SpaceKind::weak_lp: return weak_lp_norm(f, space.p, cfg);
    case SpaceKind::orlicz: return luxemburg_norm(f, space.phi);
    case SpaceKind::weak_orlicz: return weak_orlicz_norm(f, space.phi, cfg);
    }
    return 0.0;
}

inline std::string to_string(const SpaceSpec& s) {
    char buf[96];
    switch (s.kind) {
    case SpaceKind::lp: std::snprintf(buf, sizeof(buf), "lp:%.17g", s.p); break;
    case SpaceKind::weak_lp: std::snprintf(buf, sizeof(buf), "weak-lp:%.17g", s.p); break;
    case SpaceKind::orlicz:
        std::snprintf(buf, sizeof(buf), "orlicz:%s", to_string(s.phi).c_str());
        break;
    case SpaceKind::weak_orlicz:
        std::snprintf(buf, sizeof(buf), "weak-orlicz:%s", to_string(s.phi).c_str());
        break;
    }
    return buf;
}

} // namespace qnl
