#pragma once

// Command-line front end: norm, indices, estimate, sweep, audit. All command
// logic lives here so the test suite can drive it in-process; the binary in
// tools/ is a thin wrapper.
//
// Exit codes: 0 ok (audit: no violated conclusions), 2 parse/config error,
// 3 divergent norm, 4 search failure, 1 audit found violated conclusions.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnl/audit.hpp"
#include "qnl/constants.hpp"
#include "qnl/parse.hpp"
#include "qnl/report_io.hpp"

namespace qnl::cli {

namespace detail {

inline std::vector<double> split_numbers(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        const std::string tok = s.substr(pos, comma - pos);
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw parse_error("bad number '" + tok + "' in list \"" + s + "\"");
        }
        pos = comma + 1;
    }
    if (out.empty()) throw parse_error("empty number list");
    return out;
}

inline std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tmv{};
    gmtime_r(&now, &tmv);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tmv);
    return buf;
}

inline int write_output(const std::string& path, const std::string& payload,
                        std::ostream& out, std::ostream& err) {
    if (path.empty()) {
        out << payload;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "cannot open output file: " << path << "\n";
        return 2;
    }
    f << payload;
    return 0;
}

// merge config-file values into flags the user did not pass explicitly
struct ConfigMerge {
    ConfigTable table;
    std::vector<std::string> known;

    bool has(const std::string& key) {
        known.push_back(key);
        return table.count(key) != 0;
    }

    void fill_string(CLI::Option* opt, const std::string& key, std::string& var) {
        if (has(key) && opt->count() == 0) var = table.at(key).str();
    }
    // space values may be a literal string or an inline table
    SpaceSpec resolve_space(CLI::Option* opt, std::string& literal,
                            const std::string& fallback_err) {
        if (has("space") && opt->count() == 0) {
            const ConfigValue& v = table.at("space");
            if (v.is_table()) return space_from_table(v.table());
            literal = v.str();
        }
        if (literal.empty()) throw parse_error(fallback_err);
        return parse_space(literal);
    }

    NFunction resolve_phi(CLI::Option* opt, std::string& literal,
                          const std::string& fallback_err) {
        if (has("phi") && opt->count() == 0) {
            const ConfigValue& v = table.at("phi");
            if (v.is_table()) return phi_from_table(v.table());
            literal = v.str();
        }
        if (literal.empty()) throw parse_error(fallback_err);
        return parse_phi(literal);
    }
    void fill_number(CLI::Option* opt, const std::string& key, double& var) {
        if (has(key) && opt->count() == 0) var = table.at(key).number();
    }
    void fill_index(CLI::Option* opt, const std::string& key, std::uint64_t& var) {
        if (has(key) && opt->count() == 0)
            var = static_cast<std::uint64_t>(table.at(key).number());
    }
    void fill_size(CLI::Option* opt, const std::string& key, std::size_t& var) {
        if (has(key) && opt->count() == 0)
            var = static_cast<std::size_t>(table.at(key).number());
    }
    void fill_bool(CLI::Option* opt, const std::string& key, bool& var) {
        if (has(key) && opt->count() == 0) var = table.at(key).boolean();
    }

    void reject_unknown() const {
        for (const auto& [k, v] : table)
            if (std::find(known.begin(), known.end(), k) == known.end())
                throw parse_error("unknown config key '" + k + "'");
    }
};

inline ConfigMerge load_config(const std::string& path) {
    ConfigMerge m;
    if (path.empty()) return m;
    std::ifstream f(path);
    if (!f) throw parse_error("cannot read config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    m.table = parse_config(ss.str());
    return m;
}

struct ConstantChoice {
    RatioKind kind;
    bool skew; // reported three ways (core / div-est / div-upper)
};

inline ConstantChoice constant_by_name(const std::string& name) {
    if (name == "nj") return {RatioKind::nj, false};
    if (name == "c1") return {RatioKind::c1, false};
    if (name == "c2") return {RatioKind::c2, false};
    if (name == "lyj") return {RatioKind::lyj, false};
    if (name == "lyj-prime") return {RatioKind::lyj_prime, false};
    if (name == "lyjc") return {RatioKind::skew_c, true};
    if (name == "lyjcp") return {RatioKind::skew_cp, true};
    throw parse_error("unknown constant '" + name + "'");
}

inline SampleFamily family_by_name(const std::string& name) {
    if (name == "steps") return SampleFamily::step_functions;
    if (name == "witnesses") return SampleFamily::paper_witnesses;
    if (name == "mixed") return SampleFamily::mixed;
    throw parse_error("unknown sample family '" + name + "'");
}

inline std::optional<PaperBounds> bounds_for(const std::string& constant,
                                             const SpaceSpec& space, const SkewParams& sk,
                                             std::optional<double> pexp) {
    const bool is_wlp = space.kind == SpaceKind::weak_lp;
    const bool is_lp = space.kind == SpaceKind::lp;
    if (constant == "nj" && is_lp) return paper_bounds(ConstantId::cnj_lp, space.p, sk);
    if (constant == "c1" && is_wlp) return paper_bounds(ConstantId::cp1, space.p, sk);
    if (constant == "c2" && is_wlp) return paper_bounds(ConstantId::cp2, space.p, sk);
    if (constant == "lyjc" && is_wlp) return paper_bounds(ConstantId::lyjc_wlp, space.p, sk);
    if (constant == "lyjcp" && is_wlp)
        return paper_bounds(ConstantId::lyjcp_wlp, space.p, sk, pexp);
    return std::nullopt;
}

} // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quasi-norm engine for weak Orlicz and weak Lebesgue spaces"};
    app.require_subcommand(1);

    // --- norm ---
    auto* cmd_norm = app.add_subcommand("norm", "evaluate a norm of a function literal");
    std::string n_space, n_function, n_config;
    auto* n_space_opt = cmd_norm->add_option("--space", n_space, "space literal, e.g. weak-lp:2");
    auto* n_fn_opt = cmd_norm->add_option("--function", n_function, "function literal");
    cmd_norm->add_option("--config", n_config, "config file");

    // --- indices ---
    auto* cmd_indices = app.add_subcommand("indices", "Orlicz indices of a Young function");
    std::string i_phi, i_config;
    auto* i_phi_opt = cmd_indices->add_option("--phi", i_phi, "phi literal, e.g. power:2");
    cmd_indices->add_option("--config", i_config, "config file");

    // --- estimate ---
    auto* cmd_est = app.add_subcommand("estimate", "estimate a constant by supremum search");
    std::string e_constant = "nj", e_space = "lp:2", e_family = "mixed", e_out, e_config;
    double e_lambda = 1.0, e_mu = 1.0, e_pexp = 0.0, e_c1 = 1.0, e_c2 = 1.0;
    std::uint64_t e_seed = 0;
    std::size_t e_budget = 10000;
    auto* e_constant_opt = cmd_est->add_option("--constant", e_constant, "nj|c1|c2|lyj|lyj-prime|lyjc|lyjcp");
    auto* e_space_opt = cmd_est->add_option("--space", e_space, "space literal");
    auto* e_lambda_opt = cmd_est->add_option("--lambda", e_lambda, "skew parameter");
    auto* e_mu_opt = cmd_est->add_option("--mu", e_mu, "skew parameter");
    auto* e_pexp_opt = cmd_est->add_option("--pexp", e_pexp, "exponent for lyjcp (default p)");
    auto* e_c1_opt = cmd_est->add_option("--c1", e_c1, "plug-in C1 for skew constants");
    auto* e_c2_opt = cmd_est->add_option("--c2", e_c2, "plug-in C2 for skew constants");
    auto* e_budget_opt = cmd_est->add_option("--budget", e_budget, "candidate count");
    auto* e_seed_opt = cmd_est->add_option("--seed", e_seed, "search seed");
    auto* e_family_opt = cmd_est->add_option("--family", e_family, "steps|witnesses|mixed");
    auto* e_out_opt = cmd_est->add_option("--out", e_out, "output path");
    cmd_est->add_option("--config", e_config, "config file");

    // --- sweep ---
    auto* cmd_sweep = app.add_subcommand("sweep", "estimate constants over a (p, lambda, mu) grid");
    std::string s_constant = "nj", s_kind = "weak-lp", s_ps = "1.5,2,3,4";
    std::string s_lambdas = "1", s_mus = "1", s_family = "mixed", s_out, s_config;
    std::uint64_t s_seed = 0;
    std::size_t s_budget = 2000;
    auto* s_constant_opt = cmd_sweep->add_option("--constant", s_constant, "constant id");
    auto* s_kind_opt = cmd_sweep->add_option("--space-kind", s_kind, "lp|weak-lp");
    auto* s_ps_opt = cmd_sweep->add_option("--p", s_ps, "comma list of exponents");
    auto* s_lambdas_opt = cmd_sweep->add_option("--lambda", s_lambdas, "comma list (zipped with --mu)");
    auto* s_mus_opt = cmd_sweep->add_option("--mu", s_mus, "comma list (zipped with --lambda)");
    auto* s_budget_opt = cmd_sweep->add_option("--budget", s_budget, "candidate count per point");
    auto* s_seed_opt = cmd_sweep->add_option("--seed", s_seed, "search seed");
    auto* s_family_opt = cmd_sweep->add_option("--family", s_family, "steps|witnesses|mixed");
    auto* s_out_opt = cmd_sweep->add_option("--out", s_out, "output path (CSV)");
    cmd_sweep->add_option("--config", s_config, "config file");

    // --- audit ---
    auto* cmd_audit = app.add_subcommand("audit", "audit the registered claims against engine values");
    std::string a_ps = "1.5,2,3,4", a_lambdas = "1,1,2,8", a_mus = "1,2,1,8";
    std::string a_phis, a_format = "json", a_out, a_config;
    double a_pexp = 2.0;
    bool a_slow = false;
    std::uint64_t a_seed = 0;
    std::size_t a_samples = 50;
    auto* a_ps_opt = cmd_audit->add_option("--p", a_ps, "comma list of exponents");
    auto* a_phis_opt = cmd_audit->add_option(
        "--phi", a_phis, "extra Young-function rows, e.g. powerlog:2,expminus");
    auto* a_pexp_opt =
        cmd_audit->add_option("--pexp", a_pexp, "exponent for the phi-row p-th constants");
    auto* a_lambdas_opt = cmd_audit->add_option("--lambda", a_lambdas, "comma list (zipped with --mu)");
    auto* a_mus_opt = cmd_audit->add_option("--mu", a_mus, "comma list (zipped with --lambda)");
    auto* a_slow_opt = cmd_audit->add_flag("--slow-oracle", a_slow,
                                           "cross-check every norm against the dense oracle");
    auto* a_seed_opt = cmd_audit->add_option("--seed", a_seed, "sampling seed");
    auto* a_samples_opt = cmd_audit->add_option("--samples", a_samples, "property sample count");
    auto* a_format_opt = cmd_audit->add_option("--format", a_format, "json|table|csv");
    auto* a_out_opt = cmd_audit->add_option("--out", a_out, "output path");
    cmd_audit->add_option("--config", a_config, "config file");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (cmd_norm->parsed()) {
            auto cfg = detail::load_config(n_config);
            const SpaceSpec space =
                cfg.resolve_space(n_space_opt, n_space, "norm needs --space");
            cfg.fill_string(n_fn_opt, "function", n_function);
            if (cfg.has("f") && n_fn_opt->count() == 0 && n_function.empty())
                n_function = cfg.table.at("f").str();
            cfg.reject_unknown();
            if (n_function.empty()) throw parse_error("norm needs --function");
            const auto f = parse_function(n_function);
            try {
                const double v = norm(f, space);
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%#.12g", v);
                out << buf << "\n";
                return 0;
            } catch (const divergence_error& ex) {
                err << ex.what() << "\n";
                return 3;
            }
        }

        if (cmd_indices->parsed()) {
            auto cfg = detail::load_config(i_config);
            const NFunction phi = cfg.resolve_phi(i_phi_opt, i_phi, "indices needs --phi");
            cfg.reject_unknown();
            const auto idx = orlicz_indices(phi);
            char buf[128];
            std::snprintf(buf, sizeof(buf), "alpha_bar = %#.12g at t = %g\n", idx.alpha_bar,
                          idx.argmin_t);
            out << buf;
            std::snprintf(buf, sizeof(buf), "beta_bar  = %#.12g at t = %g\n", idx.beta_bar,
                          idx.argmax_t);
            out << buf;
            return 0;
        }

        if (cmd_est->parsed()) {
            auto cfg = detail::load_config(e_config);
            cfg.fill_string(e_constant_opt, "constant", e_constant);
            const SpaceSpec space =
                cfg.resolve_space(e_space_opt, e_space, "estimate needs --space");
            cfg.fill_number(e_lambda_opt, "lambda", e_lambda);
            cfg.fill_number(e_mu_opt, "mu", e_mu);
            cfg.fill_number(e_pexp_opt, "pexp", e_pexp);
            cfg.fill_number(e_c1_opt, "c1", e_c1);
            cfg.fill_number(e_c2_opt, "c2", e_c2);
            cfg.fill_size(e_budget_opt, "budget", e_budget);
            cfg.fill_index(e_seed_opt, "seed", e_seed);
            cfg.fill_string(e_family_opt, "family", e_family);
            cfg.fill_string(e_out_opt, "out", e_out);
            cfg.reject_unknown();

            const auto choice = detail::constant_by_name(e_constant);
            const SkewParams sk{e_lambda, e_mu};
            RatioSpec rspec;
            rspec.kind = choice.kind;
            rspec.c1 = e_c1;
            rspec.c2 = e_c2;
            std::optional<double> pexp;
            if (choice.kind == RatioKind::skew_cp) {
                rspec.pexp = e_pexp > 0.0
                                 ? e_pexp
                                 : (space.kind == SpaceKind::weak_lp ||
                                            space.kind == SpaceKind::lp
                                        ? space.p
                                        : 2.0);
                pexp = rspec.pexp;
            }
            SearchConfig scfg;
            scfg.seed = e_seed;
            scfg.budget = e_budget;
            scfg.family = detail::family_by_name(e_family);
            try {
                auto est = estimate(rspec, space, sk, scfg);
                const auto bounds = detail::bounds_for(e_constant, space, sk, pexp);
                if (bounds) {
                    est.lower_bound_paper = bounds->lower;
                    est.upper_bound_paper = bounds->upper;
                    est.consistent = bounds->consistent();
                }
                const auto j =
                    estimate_record_json(e_constant, space, sk, est, bounds, e_seed, pexp);
                return detail::write_output(e_out, j.dump(2) + "\n", out, err);
            } catch (const search_failure_error& ex) {
                err << ex.what() << "\n";
                return 4;
            }
        }

        if (cmd_sweep->parsed()) {
            auto cfg = detail::load_config(s_config);
            cfg.fill_string(s_constant_opt, "constant", s_constant);
            cfg.fill_string(s_kind_opt, "space_kind", s_kind);
            cfg.fill_string(s_ps_opt, "p", s_ps);
            cfg.fill_string(s_lambdas_opt, "lambda", s_lambdas);
            cfg.fill_string(s_mus_opt, "mu", s_mus);
            cfg.fill_size(s_budget_opt, "budget", s_budget);
            cfg.fill_index(s_seed_opt, "seed", s_seed);
            cfg.fill_string(s_family_opt, "family", s_family);
            cfg.fill_string(s_out_opt, "out", s_out);
            cfg.reject_unknown();

            if (s_kind != "lp" && s_kind != "weak-lp")
                throw parse_error("sweep supports --space-kind lp|weak-lp");
            const auto ps = detail::split_numbers(s_ps);
            const auto lambdas = detail::split_numbers(s_lambdas);
            const auto mus = detail::split_numbers(s_mus);
            if (lambdas.size() != mus.size())
                throw parse_error("--lambda and --mu lists must have equal length");
            const auto choice = detail::constant_by_name(s_constant);

            std::string csv = "p,lambda,mu,constant_id,estimate,paper_lower,paper_upper,"
                              "consistent\n";
            auto row = [&](double p, const SkewParams& sk, const std::string& id,
                           double value, std::optional<double> lower,
                           std::optional<double> upper, bool consistent) {
                csv += fmt12(p) + "," + fmt12(sk.lambda) + "," + fmt12(sk.mu) + "," + id +
                       "," + fmt12(value) + ",";
                if (lower) csv += fmt12(*lower);
                csv += ",";
                if (upper) csv += fmt12(*upper);
                csv += ",";
                csv += consistent ? "true" : "false";
                csv += "\n";
            };

            try {
                for (double p : ps) {
                    const SpaceSpec space =
                        s_kind == "lp" ? SpaceSpec::lp(p) : SpaceSpec::weak_lp(p);
                    for (std::size_t i = 0; i < lambdas.size(); ++i) {
                        const SkewParams sk{lambdas[i], mus[i]};
                        SearchConfig scfg;
                        scfg.seed = s_seed;
                        scfg.budget = s_budget;
                        scfg.family = detail::family_by_name(s_family);
                        RatioSpec rspec;
                        rspec.kind = choice.kind;
                        if (choice.kind == RatioKind::skew_cp) rspec.pexp = p;

                        if (!choice.skew) {
                            const auto est = estimate(rspec, space, sk, scfg);
                            const auto b = detail::bounds_for(s_constant, space, sk, p);
                            row(p, sk, s_constant, est.value,
                                b ? b->lower : std::nullopt, b ? b->upper : std::nullopt,
                                b ? b->consistent() : true);
                            continue;
                        }

                        // skew constants: C-free core, then divided by the
                        // estimated and by the proven plug-ins
                        const auto core = estimate(rspec, space, sk, scfg);
                        const auto b = detail::bounds_for(s_constant, space, sk, p);
                        const auto c1e = estimate(RatioSpec{RatioKind::c1}, space, sk, scfg);
                        const auto c2e = estimate(RatioSpec{RatioKind::c2}, space, sk, scfg);
                        const double cap = std::min(2.0, p / (p - 1.0));
                        const double prod_est = c1e.value * std::max(c2e.value, 1e-12);
                        const double prod_cap = cap * cap;
                        row(p, sk, s_constant + "-core", core.value,
                            b ? b->lower : std::nullopt, std::nullopt, true);
                        row(p, sk, s_constant + "-div-est", core.value / prod_est,
                            b ? std::optional<double>(*b->lower / prod_est) : std::nullopt,
                            std::nullopt, true);
                        row(p, sk, s_constant + "-div-upper", core.value / prod_cap,
                            b ? std::optional<double>(*b->lower / prod_cap) : std::nullopt,
                            std::nullopt, true);
                    }
                }
            } catch (const search_failure_error& ex) {
                err << ex.what() << "\n";
                return 4;
            }
            return detail::write_output(s_out, csv, out, err);
        }

        if (cmd_audit->parsed()) {
            auto cfg = detail::load_config(a_config);
            cfg.fill_string(a_ps_opt, "p", a_ps);
            cfg.fill_string(a_phis_opt, "phi", a_phis);
            cfg.fill_number(a_pexp_opt, "pexp", a_pexp);
            cfg.fill_string(a_lambdas_opt, "lambda", a_lambdas);
            cfg.fill_string(a_mus_opt, "mu", a_mus);
            cfg.fill_bool(a_slow_opt, "slow_oracle", a_slow);
            cfg.fill_index(a_seed_opt, "seed", a_seed);
            cfg.fill_size(a_samples_opt, "samples", a_samples);
            cfg.fill_string(a_format_opt, "format", a_format);
            cfg.fill_string(a_out_opt, "out", a_out);
            cfg.reject_unknown();

            AuditConfig acfg;
            acfg.ps = detail::split_numbers(a_ps);
            if (!a_phis.empty()) {
                std::size_t pos = 0;
                while (pos < a_phis.size()) {
                    std::size_t comma = a_phis.find(',', pos);
                    if (comma == std::string::npos) comma = a_phis.size();
                    acfg.phis.push_back(parse_phi(a_phis.substr(pos, comma - pos)));
                    pos = comma + 1;
                }
            }
            acfg.phi_pexp = a_pexp;
            const auto lambdas = detail::split_numbers(a_lambdas);
            const auto mus = detail::split_numbers(a_mus);
            if (lambdas.size() != mus.size())
                throw parse_error("--lambda and --mu lists must have equal length");
            acfg.skews.clear();
            for (std::size_t i = 0; i < lambdas.size(); ++i)
                acfg.skews.emplace_back(lambdas[i], mus[i]);
            acfg.slow_oracle = a_slow;
            acfg.seed = a_seed;
            acfg.property_samples = a_samples;

            AuditReport rep = run_audit(acfg);
            rep.timestamp = detail::timestamp_utc();
            rep.config_echo = "p=" + a_ps + (a_phis.empty() ? "" : " phi=" + a_phis) +
                              " lambda=" + a_lambdas + " mu=" + a_mus +
                              " seed=" + std::to_string(a_seed) +
                              " samples=" + std::to_string(a_samples) +
                              (a_slow ? " slow-oracle" : "");

            std::string payload;
            if (a_format == "json")
                payload = audit_report_json(rep).dump(2) + "\n";
            else if (a_format == "csv")
                payload = audit_report_csv(rep);
            else if (a_format == "table")
                payload = audit_report_table(rep);
            else
                throw parse_error("unknown format '" + a_format + "'");
            const int rc = detail::write_output(a_out, payload, out, err);
            return rc != 0 ? rc : audit_exit_code(rep);
        }
    } catch (const parse_error& ex) {
        err << ex.what() << "\n";
        return 2;
    } catch (const domain_error& ex) {
        err << ex.what() << "\n";
        return 2;
    } catch (const divergence_error& ex) {
        err << ex.what() << "\n";
        return 3;
    }
    return 2;
}

} // namespace qnl::cli
