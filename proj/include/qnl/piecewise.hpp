#pragma once

// Measurable functions on a bounded 1-D domain, represented as finitely many
// pieces, each a sum of at most four closed-form terms:
//
//   const(v)           x |-> v
//   powerleft(c, q)    x |-> c * (x - anchor)^(-q),  anchor <= piece left end
//   powerright(c, q)   x |-> c * (anchor - x)^(-q),  anchor >= piece right end
//
// with 0 < q < 1 so every piece is locally integrable. The class is closed
// under linear combination and knows how to compute superlevel-set measures
// (the distribution function) and partial integrals of the decreasing
// rearrangement. All analysis is done on "monotone segments": maximal
// subintervals on which the function is monotone with constant sign, found
// once at construction by derivative- and value-sign bisection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "qnl/errors.hpp"
#include "qnl/solvers.hpp"

namespace qnl {

enum class TermKind { constant, power_left, power_right };

struct Term {
    TermKind kind = TermKind::constant;
    double coeff = 0.0;  // signed
    double q = 0.0;      // in (0,1) for power terms
    double anchor = 0.0; // singular point for power terms

    bool operator==(const Term&) const = default;
};

struct Piece {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<Term> terms;

    bool operator==(const Piece&) const = default;
};

namespace detail {

inline double eval_term(const Term& t, double x) {
    switch (t.kind) {
    case TermKind::constant: return t.coeff;
    case TermKind::power_left: return t.coeff * std::pow(x - t.anchor, -t.q);
    case TermKind::power_right: return t.coeff * std::pow(t.anchor - x, -t.q);
    }
    return 0.0;
}

inline double eval_term_deriv(const Term& t, double x) {
    switch (t.kind) {
    case TermKind::constant: return 0.0;
    case TermKind::power_left: return -t.coeff * t.q * std::pow(x - t.anchor, -t.q - 1.0);
    case TermKind::power_right: return t.coeff * t.q * std::pow(t.anchor - x, -t.q - 1.0);
    }
    return 0.0;
}

// Exact antiderivative of the term evaluated over [x1, x2]; finite even when
// an endpoint coincides with the anchor (q < 1).
inline double term_integral(const Term& t, double x1, double x2) {
    switch (t.kind) {
    case TermKind::constant:
        return t.coeff * (x2 - x1);
    case TermKind::power_left: {
        const double e = 1.0 - t.q;
        return t.coeff / e * (std::pow(x2 - t.anchor, e) - std::pow(x1 - t.anchor, e));
    }
    case TermKind::power_right: {
        const double e = 1.0 - t.q;
        return t.coeff / e * (std::pow(t.anchor - x1, e) - std::pow(t.anchor - x2, e));
    }
    }
    return 0.0;
}

inline double eval_terms(const std::vector<Term>& terms, double x) {
    double v = 0.0;
    for (const auto& t : terms) v += eval_term(t, x);
    return v;
}

// |f| at distance u from a segment end, computed without ever forming the
// coordinate x = end -+ u: keeps full relative precision for u down to
// 1e-300 where x itself would round to the endpoint.
inline double eval_terms_at_distance(const std::vector<Term>& terms, double end,
                                     bool end_is_lo, double u) {
    double v = 0.0;
    for (const auto& t : terms) {
        switch (t.kind) {
        case TermKind::constant:
            v += t.coeff;
            break;
        case TermKind::power_left: {
            // x - anchor = (end - anchor) +- u
            const double d = end_is_lo ? (end - t.anchor) + u : (end - t.anchor) - u;
            v += t.coeff * std::pow(d, -t.q);
            break;
        }
        case TermKind::power_right: {
            // anchor - x = (anchor - end) -+ u
            const double d = end_is_lo ? (t.anchor - end) - u : (t.anchor - end) + u;
            v += t.coeff * std::pow(d, -t.q);
            break;
        }
        }
    }
    return std::fabs(v);
}

inline double eval_terms_deriv(const std::vector<Term>& terms, double x) {
    double v = 0.0;
    for (const auto& t : terms) v += eval_term_deriv(t, x);
    return v;
}

} // namespace detail

// A maximal subinterval of one piece on which f is monotone with constant
// sign, so |f| is monotone and invertible.
struct MonoSegment {
    double lo = 0.0, hi = 0.0;
    std::size_t piece = 0;   // index into pieces()
    int sign = 1;            // sign of f on the open segment
    bool is_const = false;
    double const_abs = 0.0;  // |f| when is_const
    double abs_lo = 0.0;     // lim |f| at lo+  (inf when singular)
    double abs_hi = 0.0;     // lim |f| at hi-
    bool increasing = false; // |f| increasing on the segment

    double len() const { return hi - lo; }
    double abs_min() const { return is_const ? const_abs : std::min(abs_lo, abs_hi); }
    double abs_max() const { return is_const ? const_abs : std::max(abs_lo, abs_hi); }
    bool singular() const { return std::isinf(abs_max()); }
};

// A point where |f| blows up, with the dominant power exponent and the
// absolute net coefficient of that exponent. Drives tail asymptotics
// lambda_f(t) ~ sum_a (coeff_a / t)^(1/q_a).
struct SingularAnchor {
    double q = 0.0;
    double coeff = 0.0; // |net coefficient| of the dominant-q terms
};

class PiecewiseFunction {
public:
    static constexpr std::size_t kMaxTerms = 4;

    PiecewiseFunction() = default; // zero function

    static PiecewiseFunction make(std::vector<Piece> pieces) {
        PiecewiseFunction f;
        f.pieces_ = normalize(std::move(pieces));
        f.segment_all();
        return f;
    }

    static PiecewiseFunction zero() { return PiecewiseFunction{}; }

    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::vector<MonoSegment>& segments() const { return segments_; }
    bool is_zero() const { return pieces_.empty(); }

    bool operator==(const PiecewiseFunction& o) const { return pieces_ == o.pieces_; }

    double operator()(double x) const {
        for (const auto& p : pieces_) {
            if (x > p.lo && x < p.hi) return detail::eval_terms(p.terms, x);
            if (x <= p.lo) break;
        }
        return 0.0;
    }

    // Total measure of {f != 0} (sign crossings are isolated points).
    double support_measure() const {
        double m = 0.0;
        for (const auto& s : segments_) m += s.len();
        return m;
    }

    double domain_lo() const { return pieces_.empty() ? 0.0 : pieces_.front().lo; }
    double domain_hi() const { return pieces_.empty() ? 0.0 : pieces_.back().hi; }

    bool has_singularity() const { return !singular_anchors_.empty(); }
    const std::vector<SingularAnchor>& singular_anchors() const { return singular_anchors_; }

    double max_singular_exponent() const {
        double q = 0.0;
        for (const auto& a : singular_anchors_) q = std::max(q, a.q);
        return q;
    }

    // Largest finite |f| value scale: max of finite segment endpoint values.
    double finite_value_scale() const {
        double s = 0.0;
        for (const auto& seg : segments_) {
            if (std::isfinite(seg.abs_lo)) s = std::max(s, seg.abs_lo);
            if (std::isfinite(seg.abs_hi)) s = std::max(s, seg.abs_hi);
            if (seg.is_const) s = std::max(s, seg.const_abs);
        }
        return s;
    }

    bool all_const() const {
        for (const auto& seg : segments_)
            if (!seg.is_const) return false;
        return true;
    }

    // ---- distribution function -------------------------------------------

    // measure{ |f| > t } (strict) and measure{ |f| >= t } (weak). They differ
    // only on the flat parts contributed by constant segments.
    double dist_strict(double t) const { return dist(t, false); }
    double dist_weak(double t) const { return dist(t, true); }

    // Levels where the distribution has a jump or a kink: constant-segment
    // values and finite segment endpoint values.
    std::vector<double> level_breakpoints() const {
        std::vector<double> v;
        for (const auto& seg : segments_) {
            if (seg.is_const) {
                if (seg.const_abs > 0.0) v.push_back(seg.const_abs);
            } else {
                if (std::isfinite(seg.abs_lo) && seg.abs_lo > 0.0) v.push_back(seg.abs_lo);
                if (std::isfinite(seg.abs_hi) && seg.abs_hi > 0.0) v.push_back(seg.abs_hi);
            }
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

    // Graded interior |f| probes per smooth segment; used to seed supremum
    // searches when a segment spans many orders of magnitude.
    std::vector<double> level_probes(std::size_t per_segment = 64) const {
        std::vector<double> v;
        for (const auto& seg : segments_) {
            if (seg.is_const) continue;
            for (std::size_t i = 1; i + 1 < per_segment; ++i) {
                const double u = static_cast<double>(i) / static_cast<double>(per_segment - 1);
                const double x = seg.lo + seg.len() * u;
                const double val = std::fabs(eval_in_piece(seg.piece, x));
                if (std::isfinite(val) && val > 0.0) v.push_back(val);
            }
            // graded probes toward singular/extreme ends
            for (double s : {1e-12, 1e-9, 1e-6, 1e-3}) {
                for (double x : {seg.lo + seg.len() * s, seg.hi - seg.len() * s}) {
                    const double val = std::fabs(eval_in_piece(seg.piece, x));
                    if (std::isfinite(val) && val > 0.0) v.push_back(val);
                }
            }
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

    // ---- integrals ---------------------------------------------------------

    // Exact integral of |f| over the whole domain (locally integrable by the
    // q < 1 invariant).
    double integral_abs() const {
        double s = 0.0;
        for (const auto& seg : segments_) s += segment_abs_integral(seg, seg.lo, seg.hi);
        return s;
    }

    // integral_0^m f*(s) ds, the largest integral of |f| over sets of measure
    // m. Computed by cutting at the level t* = f*(m): exact term integrals
    // over {|f| > t*} plus a flat filler at height t*.
    double rearrangement_integral(double m) const {
        if (!(m >= 0.0)) throw domain_error("rearrangement_integral: m must be >= 0");
        if (m == 0.0 || is_zero()) return 0.0;
        const double support = support_measure();
        if (m >= support) return integral_abs();

        // t* = inf{ t : dist(t) <= m }
        double hi = std::max(finite_value_scale(), 1.0);
        while (dist_strict(hi) > m) hi *= 4.0;
        const double tstar =
            bisect_boundary([&](double t) { return dist_strict(t) <= m; }, 0.0, hi, 200);

        double total = tstar * (m - dist_strict(tstar));
        for (const auto& seg : segments_) {
            const auto cut = superlevel_in_segment(seg, tstar, false);
            if (cut.second > cut.first)
                total += segment_abs_integral(seg, cut.first, cut.second);
        }
        return total;
    }

    // ---- internals used by the norm code -----------------------------------

    double eval_in_piece(std::size_t piece_index, double x) const {
        return detail::eval_terms(pieces_[piece_index].terms, x);
    }

    // Length of {|f| > t} within the segment, measured as a distance from the
    // segment's max-value end. Avoids the coordinate cancellation that would
    // otherwise destroy tiny tail measures near the far endpoint.
    double superlevel_distance(const MonoSegment& seg, double t) const {
        if (t <= seg.abs_min()) return seg.len();
        if (std::isfinite(seg.abs_max()) && t >= seg.abs_max()) return 0.0;
        const auto& terms = pieces_[seg.piece].terms;
        // the max-value end: lo when |f| decreases, hi when it increases
        const bool max_at_lo = !seg.increasing;
        if (terms.size() == 1 && terms[0].kind != TermKind::constant) {
            const Term& tm = terms[0];
            const double d = std::pow(std::fabs(tm.coeff) / t, 1.0 / tm.q);
            // distance from the anchor, shifted to the segment end (exact when
            // the anchor sits on the end, as every singular segment has)
            const double off = max_at_lo ? seg.lo - tm.anchor : tm.anchor - seg.hi;
            return std::clamp(d - off, 0.0, seg.len());
        }
        const double end = max_at_lo ? seg.lo : seg.hi;
        auto absf = [&](double u) {
            return detail::eval_terms_at_distance(terms, end, max_at_lo, u);
        };
        // log-space bisection in the end distance keeps relative accuracy for
        // deep tails; |f| exceeds t near u = 0 and drops below it at u = len
        const double slo = std::log(1e-300), shi = std::log(seg.len());
        const double s = bisect_boundary(
            [&](double lu) { return absf(std::exp(lu)) <= t; }, slo, shi, 200);
        return std::clamp(std::exp(s), 0.0, seg.len());
    }

    // Subinterval of the segment where |f| > t (strict) or >= t (weak).
    // Returns an empty interval (second <= first) when none.
    std::pair<double, double> superlevel_in_segment(const MonoSegment& seg, double t,
                                                    bool weak) const {
        if (seg.is_const) {
            const bool in = weak ? seg.const_abs >= t : seg.const_abs > t;
            return in ? std::pair{seg.lo, seg.hi} : std::pair{seg.lo, seg.lo};
        }
        const double u = superlevel_distance(seg, t);
        if (u <= 0.0) return {seg.lo, seg.lo};
        return seg.increasing ? std::pair{seg.hi - u, seg.hi} : std::pair{seg.lo, seg.lo + u};
    }

    // Exact integral of |f| over [x1, x2] inside the (constant-sign) segment.
    double segment_abs_integral(const MonoSegment& seg, double x1, double x2) const {
        if (!(x2 > x1)) return 0.0;
        double v = 0.0;
        for (const auto& t : pieces_[seg.piece].terms) v += detail::term_integral(t, x1, x2);
        return seg.sign >= 0 ? v : -v;
    }

private:
    std::vector<Piece> pieces_;
    std::vector<MonoSegment> segments_;
    std::vector<SingularAnchor> singular_anchors_;

    double dist(double t, bool weak) const {
        if (!(t >= 0.0)) throw domain_error("distribution: level must be >= 0");
        double m = 0.0;
        for (const auto& seg : segments_) {
            if (t == 0.0) {
                m += seg.len(); // {|f| > 0} up to the null set of crossings
                continue;
            }
            if (seg.is_const) {
                if (weak ? seg.const_abs >= t : seg.const_abs > t) m += seg.len();
                continue;
            }
            m += superlevel_distance(seg, t);
        }
        return m;
    }

    static std::vector<Piece> normalize(std::vector<Piece> in) {
        std::vector<Piece> out;
        for (auto& p : in) {
            if (!(p.lo < p.hi) || !std::isfinite(p.lo) || !std::isfinite(p.hi))
                throw domain_error("piece interval must be finite with lo < hi");
            // merge duplicate (kind, q, anchor) keys and drop zero coefficients
            std::vector<Term> merged;
            for (const auto& t : p.terms) {
                if (!std::isfinite(t.coeff)) throw domain_error("non-finite term coefficient");
                if (t.kind != TermKind::constant) {
                    if (!(t.q > 0.0 && t.q < 1.0))
                        throw domain_error("power-term exponent must satisfy 0 < q < 1");
                    if (t.kind == TermKind::power_left && t.anchor > p.lo)
                        throw domain_error("powerleft anchor must not exceed the piece start");
                    if (t.kind == TermKind::power_right && t.anchor < p.hi)
                        throw domain_error("powerright anchor must not precede the piece end");
                }
                bool found = false;
                for (auto& mt : merged) {
                    if (mt.kind == t.kind &&
                        (t.kind == TermKind::constant ||
                         (mt.q == t.q && mt.anchor == t.anchor))) {
                        mt.coeff += t.coeff;
                        found = true;
                        break;
                    }
                }
                if (!found) merged.push_back(t);
            }
            std::erase_if(merged, [](const Term& t) { return t.coeff == 0.0; });
            if (merged.size() > kMaxTerms)
                throw unsupported_combination_error("piece exceeds the term cap");
            if (merged.empty()) continue;
            p.terms = std::move(merged);
            out.push_back(std::move(p));
        }
        std::sort(out.begin(), out.end(),
                  [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
        for (std::size_t i = 1; i < out.size(); ++i)
            if (out[i].lo < out[i - 1].hi - 1e-15 * std::fabs(out[i - 1].hi))
                throw domain_error("pieces overlap");
        // merge adjacent equal-constant pieces into one
        std::vector<Piece> merged_pieces;
        for (auto& p : out) {
            if (!merged_pieces.empty()) {
                Piece& prev = merged_pieces.back();
                if (prev.hi == p.lo && prev.terms.size() == 1 && p.terms.size() == 1 &&
                    prev.terms[0].kind == TermKind::constant &&
                    p.terms[0].kind == TermKind::constant &&
                    prev.terms[0].coeff == p.terms[0].coeff) {
                    prev.hi = p.hi;
                    continue;
                }
            }
            merged_pieces.push_back(std::move(p));
        }
        return merged_pieces;
    }

    // Dominant singular behaviour of the piece at one of its ends, if any.
    static std::optional<SingularAnchor> end_singularity(const Piece& p, bool left_end) {
        double best_q = 0.0, coeff = 0.0;
        for (const auto& t : p.terms) {
            const bool here = left_end
                                  ? (t.kind == TermKind::power_left && t.anchor == p.lo)
                                  : (t.kind == TermKind::power_right && t.anchor == p.hi);
            if (!here) continue;
            if (t.q > best_q) {
                best_q = t.q;
                coeff = t.coeff;
            } else if (t.q == best_q) {
                coeff += t.coeff;
            }
        }
        if (best_q > 0.0 && coeff != 0.0) return SingularAnchor{best_q, std::fabs(coeff)};
        return std::nullopt;
    }

    void segment_all() {
        segments_.clear();
        singular_anchors_.clear();
        for (std::size_t pi = 0; pi < pieces_.size(); ++pi) {
            const Piece& p = pieces_[pi];
            const auto sing_lo = end_singularity(p, true);
            const auto sing_hi = end_singularity(p, false);
            if (sing_lo) singular_anchors_.push_back(*sing_lo);
            if (sing_hi) singular_anchors_.push_back(*sing_hi);

            if (p.terms.size() == 1 && p.terms[0].kind == TermKind::constant) {
                MonoSegment s;
                s.lo = p.lo;
                s.hi = p.hi;
                s.piece = pi;
                s.sign = p.terms[0].coeff > 0.0 ? 1 : -1;
                s.is_const = true;
                s.const_abs = std::fabs(p.terms[0].coeff);
                s.abs_lo = s.abs_hi = s.const_abs;
                emit(s);
                continue;
            }

            // split at the (at most one) interior critical point of f
            std::vector<double> cuts{p.lo};
            const auto crit = critical_point(p);
            if (crit) cuts.push_back(*crit);
            cuts.push_back(p.hi);

            for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
                split_monotone(pi, cuts[k], cuts[k + 1],
                               sing_lo.has_value() && k == 0,
                               sing_hi.has_value() && k + 2 == cuts.size());
        }
        std::sort(segments_.begin(), segments_.end(),
                  [](const MonoSegment& a, const MonoSegment& b) { return a.lo < b.lo; });
    }

    void emit(const MonoSegment& s) { segments_.push_back(s); }

    std::optional<double> critical_point(const Piece& p) const {
        const auto& terms = p.terms;
        bool any_power = false;
        for (const auto& t : terms) any_power |= t.kind != TermKind::constant;
        if (!any_power) return std::nullopt;
        if (terms.size() == 1) return std::nullopt; // single power term is monotone

        auto dsign = [&](double x) {
            const double d = detail::eval_terms_deriv(terms, x);
            return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        };
        const double len = p.hi - p.lo;
        std::vector<double> xs;
        for (double s : {1e-12, 1e-10, 1e-8, 1e-6, 1e-5, 1e-4, 1e-3})
            xs.push_back(p.lo + len * s);
        for (int i = 1; i < 256; ++i)
            xs.push_back(p.lo + len * static_cast<double>(i) / 256.0);
        for (double s : {1e-3, 1e-4, 1e-5, 1e-6, 1e-8, 1e-10, 1e-12})
            xs.push_back(p.hi - len * s);
        std::sort(xs.begin(), xs.end());

        std::vector<std::pair<double, double>> flips; // bracket of each sign change
        int prev = 0;
        double prev_x = 0.0;
        for (double x : xs) {
            const int s = dsign(x);
            if (s == 0) continue;
            if (prev != 0 && s != prev) flips.emplace_back(prev_x, x);
            prev = s;
            prev_x = x;
        }
        if (flips.empty()) return std::nullopt;
        if (flips.size() > 1)
            throw unsupported_combination_error(
                "piece has more than one interior critical point");
        return bisect_root([&](double x) { return detail::eval_terms_deriv(terms, x); },
                           flips[0].first, flips[0].second, 200);
    }

    // [lo, hi] is a maximal interval where f is monotone; split once more at a
    // possible zero crossing, then record the constant-sign segments.
    void split_monotone(std::size_t pi, double lo, double hi, bool sing_lo, bool sing_hi) {
        const auto& terms = pieces_[pi].terms;
        auto value = [&](double x) { return detail::eval_terms(terms, x); };
        const double len = hi - lo;

        double vlo, vhi; // signed limits
        if (sing_lo) {
            // sign of the dominant singular coefficient
            double probe = value(lo + len * 1e-13);
            vlo = std::isfinite(probe) ? (probe >= 0.0
                        ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity())
                                       : probe;
        } else {
            vlo = value(lo);
        }
        if (sing_hi) {
            double probe = value(hi - len * 1e-13);
            vhi = std::isfinite(probe) ? (probe >= 0.0
                        ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity())
                                       : probe;
        } else {
            vhi = value(hi);
        }

        auto add = [&](double a, double b, double va, double vb) {
            if (!(b > a)) return;
            MonoSegment s;
            s.lo = a;
            s.hi = b;
            s.piece = pi;
            const double ref = va != 0.0 ? va : vb; // endpoints share a sign; one may be 0
            s.sign = ref >= 0.0 ? 1 : -1;
            s.abs_lo = std::fabs(va);
            s.abs_hi = std::fabs(vb);
            s.is_const = false;
            s.increasing = s.abs_hi > s.abs_lo;
            emit(s);
        };

        const bool crosses = (vlo > 0.0 && vhi < 0.0) || (vlo < 0.0 && vhi > 0.0);
        if (!crosses) {
            add(lo, hi, vlo, vhi);
            return;
        }
        // monotone f with a sign change: locate the root
        double blo = lo, bhi = hi;
        if (sing_lo) blo = lo + len * 1e-13;
        if (sing_hi) bhi = hi - len * 1e-13;
        const double x0 = bisect_root(value, blo, bhi, 200);
        add(lo, x0, vlo, 0.0);
        add(x0, hi, 0.0, vhi);
    }
};

// ---- constructors ----------------------------------------------------------

inline PiecewiseFunction char_fn(double lo, double hi, double height) {
    if (!(lo < hi)) throw domain_error("char_fn: empty interval");
    if (!std::isfinite(height)) throw domain_error("char_fn: height must be finite");
    if (height == 0.0) return PiecewiseFunction::zero();
    return PiecewiseFunction::make({Piece{lo, hi, {Term{TermKind::constant, height}}}});
}

inline PiecewiseFunction power_left_fn(double lo, double hi, double c, double q) {
    if (!(lo < hi)) throw domain_error("power_left_fn: empty interval");
    return PiecewiseFunction::make({Piece{lo, hi, {Term{TermKind::power_left, c, q, lo}}}});
}

inline PiecewiseFunction power_right_fn(double lo, double hi, double c, double q) {
    if (!(lo < hi)) throw domain_error("power_right_fn: empty interval");
    return PiecewiseFunction::make({Piece{lo, hi, {Term{TermKind::power_right, c, q, hi}}}});
}

// alpha*f + beta*g on the common refinement of the two partitions.
inline PiecewiseFunction lincomb(double alpha, const PiecewiseFunction& f, double beta,
                                 const PiecewiseFunction& g) {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw domain_error("lincomb: coefficients must be finite");
    std::vector<double> cuts;
    for (const auto& p : f.pieces()) {
        cuts.push_back(p.lo);
        cuts.push_back(p.hi);
    }
    for (const auto& p : g.pieces()) {
        cuts.push_back(p.lo);
        cuts.push_back(p.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto terms_at = [](const PiecewiseFunction& fn, double scale, double lo, double hi,
                       std::vector<Term>& out) {
        for (const auto& p : fn.pieces()) {
            if (p.lo <= lo && hi <= p.hi) {
                for (auto t : p.terms) {
                    t.coeff *= scale;
                    out.push_back(t);
                }
                return;
            }
        }
    };

    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Piece p;
        p.lo = cuts[i];
        p.hi = cuts[i + 1];
        if (alpha != 0.0) terms_at(f, alpha, p.lo, p.hi, p.terms);
        if (beta != 0.0) terms_at(g, beta, p.lo, p.hi, p.terms);
        if (!p.terms.empty()) pieces.push_back(std::move(p));
    }
    return PiecewiseFunction::make(std::move(pieces));
}

inline PiecewiseFunction scaled(double c, const PiecewiseFunction& f) {
    return lincomb(c, f, 0.0, PiecewiseFunction::zero());
}

} // namespace qnl
