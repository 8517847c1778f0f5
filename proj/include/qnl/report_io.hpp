#pragma once

// JSON / CSV / table renderings of audit reports and estimate records.
// Numbers destined for CSV use a fixed %.12g so reruns with the same seed
// produce identical bytes; the JSON timestamp field is the only part of a
// report excluded from determinism comparisons.

#include <string>
#include <vector>

#include <json.hpp>

#include "qnl/audit.hpp"
#include "qnl/constants.hpp"
#include "qnl/parse.hpp"

namespace qnl {

using ordered_json = nlohmann::ordered_json;

inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline ordered_json audit_report_json(const AuditReport& rep, bool with_timestamp = true) {
    ordered_json j;
    j["engine"] = rep.engine_version;
    if (with_timestamp) j["timestamp"] = rep.timestamp;
    if (!rep.config_echo.empty()) j["config"] = rep.config_echo;
    j["summary"] = {{"confirmed", rep.confirmed},
                    {"approx_holds", rep.approx},
                    {"violated", rep.violated},
                    {"inconsistent", rep.inconsistent},
                    {"errors", rep.errors},
                    {"violated_conclusions", rep.violated_conclusions}};
    j["reading_notes"] = rep.reading_notes;
    ordered_json items = ordered_json::array();
    for (const auto& it : rep.items) {
        ordered_json ji;
        ji["claim_id"] = it.claim_id;
        ji["kind"] = to_string(it.kind);
        ji["verdict"] = to_string(it.verdict);
        ji["claim"] = it.claim;
        if (!std::isnan(it.paper_value)) ji["paper_value"] = it.paper_value;
        if (!std::isnan(it.computed)) ji["computed"] = it.computed;
        ji["tolerance"] = it.tolerance;
        if (!std::isnan(it.oracle_agreement)) ji["oracle_agreement"] = it.oracle_agreement;
        if (!it.notes.empty()) ji["notes"] = it.notes;
        items.push_back(std::move(ji));
    }
    j["items"] = std::move(items);
    return j;
}

inline std::string audit_report_csv(const AuditReport& rep) {
    std::string out = "claim_id,kind,verdict,paper_value,computed,tolerance,oracle_agreement\n";
    for (const auto& it : rep.items) {
        out += it.claim_id;
        out += ',';
        out += to_string(it.kind);
        out += ',';
        out += to_string(it.verdict);
        out += ',';
        if (!std::isnan(it.paper_value)) out += fmt12(it.paper_value);
        out += ',';
        if (!std::isnan(it.computed)) out += fmt12(it.computed);
        out += ',';
        out += fmt12(it.tolerance);
        out += ',';
        if (!std::isnan(it.oracle_agreement)) out += fmt12(it.oracle_agreement);
        out += '\n';
    }
    return out;
}

inline std::string audit_report_table(const AuditReport& rep) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"claim", "kind", "verdict", "paper", "computed", "oracle-dev"});
    for (const auto& it : rep.items) {
        rows.push_back({it.claim_id, to_string(it.kind), to_string(it.verdict),
                        std::isnan(it.paper_value) ? "" : fmt12(it.paper_value),
                        std::isnan(it.computed) ? "" : fmt12(it.computed),
                        std::isnan(it.oracle_agreement) ? "" : fmt12(it.oracle_agreement)});
    }
    std::vector<std::size_t> widths(rows[0].size(), 0);
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c)
            widths[c] = std::max(widths[c], r[c].size());
    std::string out;
    out += rep.engine_version;
    if (!rep.timestamp.empty()) out += "  " + rep.timestamp;
    out += '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
            out += rows[i][c];
            out.append(widths[c] - rows[i][c].size() + 2, ' ');
        }
        out += '\n';
        if (i == 0) {
            for (std::size_t c = 0; c < widths.size(); ++c) out.append(widths[c] + 2, '-');
            out += '\n';
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "confirmed %d  approx-holds %d  violated %d  inconsistent %d  errors %d\n",
                  rep.confirmed, rep.approx, rep.violated, rep.inconsistent, rep.errors);
    out += buf;
    return out;
}

inline ordered_json estimate_record_json(const std::string& constant, const SpaceSpec& space,
                                         const SkewParams& sk, const ConstantEstimate& est,
                                         const std::optional<PaperBounds>& bounds,
                                         std::uint64_t seed,
                                         std::optional<double> pexp = std::nullopt) {
    ordered_json j;
    j["constant"] = constant;
    j["space"] = to_string(space);
    j["lambda"] = sk.lambda;
    j["mu"] = sk.mu;
    if (pexp) j["pexp"] = *pexp;
    j["value"] = est.value;
    j["witness"] = {{"f", print_function(est.witness_f)},
                    {"g", print_function(est.witness_g)},
                    {"candidate_index", est.candidate_index}};
    ordered_json jb;
    bool consistent = true;
    if (bounds) {
        if (bounds->lower) jb["lower"] = *bounds->lower;
        if (bounds->upper) jb["upper"] = *bounds->upper;
        jb["lower_over_c1c2"] = bounds->lower_over_c1c2;
        consistent = bounds->consistent();
    }
    j["bounds"] = std::move(jb);
    j["consistent"] = consistent;
    j["seed"] = seed;
    return j;
}

} // namespace qnl
