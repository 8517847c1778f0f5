// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Each criterion pins its tolerance and runtime budget in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qnl/audit.hpp"
#include "qnl/cli.hpp"
#include "qnl/constants.hpp"
#include "qnl/norms.hpp"
#include "qnl/report_io.hpp"
#include "qnl/rng.hpp"
#include "qnl/witnesses.hpp"

using namespace qnl;

namespace {

int failures = 0;

void criterion(int n, const char* desc, double budget_s,
               const std::function<bool(std::string&)>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = fn(detail);
    } catch (const std::exception& ex) {
        ok = false;
        detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ");
        detail += "runtime budget exceeded";
    }
    std::printf("%s criterion %d: %s [%.1fs/%gs]%s%s\n", ok ? "PASS" : "FAIL", n, desc,
                secs, budget_s, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

PiecewiseFunction random_step(Rng& rng, int k_max, bool signs) {
    PiecewiseFunction f = PiecewiseFunction::zero();
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k_max)));
    for (int i = 0; i < k; ++i) {
        const double lo = rng.uniform(0.0, 3.0);
        const double len = rng.uniform(1e-2, 1.0);
        double h = rng.log_uniform(1e-2, 1e2);
        if (signs && rng.coin()) h = -h;
        f = lincomb(1.0, f, 1.0, char_fn(lo, lo + len, h));
    }
    return f;
}

} // namespace

int main() {
    criterion(1, "chi_E identity in the weak Orlicz norm (1e-8)", 1.0, [](std::string& d) {
        const std::vector<NFunction> phis = {NFunction::power(1.5), NFunction::power(2.0),
                                             NFunction::power(3.0), NFunction::exp_minus()};
        double worst = 0.0;
        for (const auto& phi : phis) {
            for (double e : {0.5, 1.0, 2.0}) {
                const double got = weak_orlicz_norm(char_fn(0.0, e, 1.0), phi);
                const double want = 1.0 / phi_inverse(phi, 1.0 / e, 1e-14);
                worst = std::max(worst, rel(got, want));
            }
        }
        d = "max rel dev " + fmt12(worst);
        return worst <= 1e-8;
    });

    criterion(2, "orlicz indices of power families equal 2^(-1/p) (1e-6)", 1.0,
              [](std::string& d) {
                  double worst = 0.0;
                  for (double p : {1.5, 2.0, 3.0, 4.0, 8.0}) {
                      const auto idx = orlicz_indices(NFunction::power(p));
                      const double want = std::pow(2.0, -1.0 / p);
                      worst = std::max(worst, rel(idx.alpha_bar, want));
                      worst = std::max(worst, rel(idx.beta_bar, want));
                  }
                  d = "max rel dev " + fmt12(worst);
                  return worst <= 1e-6;
              });

    criterion(3, "witness norms at lam = mu = 1 (1e-6 / 1e-4)", 5.0, [](std::string& d) {
        double worst_unit = 0.0, worst_sum = 0.0;
        for (double p : {1.5, 2.0, 3.0, 4.0}) {
            worst_unit = std::max(worst_unit, rel(weak_lp_norm(witness::f1(p), p), 1.0));
            const double got = weak_lp_norm(witness::h1(p, 1.0, 1.0), p);
            worst_sum = std::max(worst_sum, rel(got, std::pow(2.0, 1.0 + 1.0 / p)));
        }
        d = "unit dev " + fmt12(worst_unit) + ", sum dev " + fmt12(worst_sum);
        return worst_unit <= 1e-6 && worst_sum <= 1e-4;
    });

    criterion(4, "kolmogorov sandwich on 200 seeded steps per p, tight at f1", 30.0,
              [](std::string& d) {
                  double min_slack = std::numeric_limits<double>::infinity();
                  double worst_f1 = 0.0;
                  for (double p : {1.5, 2.0, 4.0}) {
                      Rng rng(40 + static_cast<std::uint64_t>(10.0 * p));
                      for (int i = 0; i < 200; ++i) {
                          const auto f = random_step(rng, 4, true);
                          if (f.is_zero()) continue;
                          const double w = weak_lp_norm(f, p);
                          const double s = kolmogorov_functional(f, p);
                          min_slack = std::min(min_slack, (s - w) / std::max(1.0, w));
                          min_slack = std::min(
                              min_slack, ((p / (p - 1.0)) * w - s) / std::max(1.0, s));
                      }
                      worst_f1 = std::max(
                          worst_f1,
                          rel(kolmogorov_functional(witness::f1(p), p), p / (p - 1.0)));
                  }
                  d = "min slack " + fmt12(min_slack) + ", f1 dev " + fmt12(worst_f1);
                  return min_slack >= -1e-8 && worst_f1 <= 1e-6;
              });

    criterion(5, "quasi-triangle and C_p1 caps on 500 seeded pairs per p", 60.0,
              [](std::string& d) {
                  double min_slack = std::numeric_limits<double>::infinity();
                  double worst_excess = -std::numeric_limits<double>::infinity();
                  for (double p : {1.5, 2.0, 4.0}) {
                      const auto wlp = SpaceSpec::weak_lp(p);
                      const double cap = std::min(2.0, p / (p - 1.0));
                      Rng rng(50 + static_cast<std::uint64_t>(10.0 * p));
                      for (int i = 0; i < 500; ++i) {
                          const auto f = random_step(rng, 3, false);
                          const auto g = random_step(rng, 3, false);
                          if (f.is_zero() || g.is_zero()) continue;
                          const double lam = rng.log_uniform(1e-2, 1e2);
                          const double mu = rng.log_uniform(1e-2, 1e2);
                          const double lhs = weak_lp_norm(lincomb(lam, f, mu, g), p);
                          const double rhs = 2.0 * (lam * weak_lp_norm(f, p) +
                                                    mu * weak_lp_norm(g, p));
                          min_slack = std::min(min_slack, (rhs - lhs) / rhs);
                          worst_excess = std::max(
                              worst_excess, ratio_c1(f, g, {lam, mu}, wlp) - cap);
                      }
                  }
                  d = "min slack " + fmt12(min_slack) + ", max cap excess " +
                      fmt12(worst_excess);
                  return min_slack >= -1e-9 && worst_excess <= 1e-9;
              });

    // criteria 6-8 keep their serialized outputs for the determinism check
    std::string c6_json_a, c6_json_b, c7_json_a, c7_json_b, c8_json_a, c8_json_b;

    auto run_c6 = [](std::string& serialized, std::string& d) {
        bool ok = true;
        ordered_json all = ordered_json::array();
        for (double p : {1.5, 2.0, 3.0, 4.0}) {
            SearchConfig cfg;
            cfg.budget = 10000;
            cfg.seed = 0;
            cfg.family = SampleFamily::mixed;
            const auto est = estimate(RatioSpec{RatioKind::nj}, SpaceSpec::lp(p),
                                      {1.0, 1.0}, cfg);
            const double want =
                std::max(std::pow(2.0, 2.0 / p - 1.0), std::pow(2.0, 1.0 - 2.0 / p));
            if (!(est.value >= want - 0.05 && est.value <= want + 1e-9)) {
                ok = false;
                d += " p=" + fmt12(p) + " est=" + fmt12(est.value) + " want~" + fmt12(want);
            }
            all.push_back(estimate_record_json("nj", SpaceSpec::lp(p), {1.0, 1.0}, est,
                                               paper_bounds(ConstantId::cnj_lp, p, {1.0, 1.0}),
                                               cfg.seed));
        }
        serialized = all.dump(2);
        return ok;
    };
    criterion(6, "classical C_NJ(L^p) recovery by mixed search (budget 1e4)", 120.0,
              [&](std::string& d) { return run_c6(c6_json_a, d); });

    auto run_c7 = [](std::string& serialized, std::string& d) {
        bool ok = true;
        ordered_json all = ordered_json::array();
        for (double p : {1.5, 2.0, 4.0}) {
            SearchConfig cfg;
            cfg.family = SampleFamily::paper_witnesses;
            cfg.seed = 0;
            const auto space = SpaceSpec::weak_lp(p);
            const auto est =
                estimate(RatioSpec{RatioKind::skew_c, 1.0, 1.0}, space, {1.0, 1.0}, cfg);
            const double floor = std::pow(2.0, 2.0 / p - 1.0) - 1e-3;
            if (!(est.value >= floor)) {
                ok = false;
                d += " p=" + fmt12(p) + " core=" + fmt12(est.value) + " floor=" + fmt12(floor);
            }
            all.push_back(estimate_record_json(
                "lyjc-core", space, {1.0, 1.0}, est,
                paper_bounds(ConstantId::lyjc_wlp, p, {1.0, 1.0}), cfg.seed));
        }
        serialized = all.dump(2);
        return ok;
    };
    criterion(7, "skew core over paper witnesses at lam = mu reaches 2^(2/p-1) - 1e-3",
              60.0, [&](std::string& d) { return run_c7(c7_json_a, d); });

    auto run_c8 = [](std::string& serialized, std::string& d) {
        AuditConfig cfg;
        cfg.slow_oracle = true;
        const auto rep = run_audit(cfg);
        serialized = audit_report_json(rep, false).dump(2);

        const auto registry = audit_registry(cfg);
        std::set<std::string> seen;
        for (const auto& it : rep.items) seen.insert(it.claim_id);
        bool ok = true;
        if (seen.size() != rep.items.size() || rep.items.size() != registry.size()) {
            ok = false;
            d += " registry mismatch";
        }
        for (const auto& id : registry) {
            if (!seen.count(id)) {
                ok = false;
                d += " missing " + id;
                break;
            }
        }
        bool found_inconsistent = false;
        double worst_sym_dev = 0.0;
        for (const auto& it : rep.items) {
            if (it.claim_id == "cp1-bounds@p2-l8-m8")
                found_inconsistent = it.verdict == Verdict::inconsistent;
            const bool symmetric = it.claim_id.find("-l1-m1") != std::string::npos ||
                                   it.claim_id.find("-l8-m8") != std::string::npos;
            if (symmetric && !std::isnan(it.oracle_agreement))
                worst_sym_dev = std::max(worst_sym_dev, it.oracle_agreement);
        }
        if (!found_inconsistent) {
            ok = false;
            d += " (8,8) inconsistency not flagged";
        }
        d += " sym-row oracle dev " + fmt12(worst_sym_dev);
        if (worst_sym_dev > 1e-4) ok = false;
        return ok;
    };
    criterion(8, "audit registry complete, (8,8) flagged, oracle agreement on lam = mu rows",
              120.0, [&](std::string& d) { return run_c8(c8_json_a, d); });

    criterion(9, "criteria 6-8 reruns are byte-identical (timestamp excluded)", 300.0,
              [&](std::string& d) {
                  std::string dummy;
                  run_c6(c6_json_b, dummy);
                  run_c7(c7_json_b, dummy);
                  run_c8(c8_json_b, dummy);
                  const bool ok = c6_json_a == c6_json_b && c7_json_a == c7_json_b &&
                                  c8_json_a == c8_json_b;
                  if (!ok)
                      d = std::string("mismatch in ") +
                          (c6_json_a != c6_json_b   ? "criterion 6"
                           : c7_json_a != c7_json_b ? "criterion 7"
                                                    : "criterion 8");
                  return ok && !c6_json_a.empty() && !c7_json_a.empty() && !c8_json_a.empty();
              });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
