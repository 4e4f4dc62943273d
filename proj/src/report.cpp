#include "hyperbounds/report.hpp"

namespace hyperbounds {

using nlohmann::ordered_json;

CheckRecord make_check(std::string id, std::string anchor, bool ok, std::string witness) {
    return CheckRecord{std::move(id), std::move(anchor), ok ? "pass" : "fail",
                       std::move(witness), 0.0};
}

CheckRecord make_info(std::string id, std::string anchor, std::string witness) {
    return CheckRecord{std::move(id), std::move(anchor), "info", std::move(witness), 0.0};
}

bool SuiteReport::overall_pass() const { return fail_count() == 0; }

int SuiteReport::fail_count() const {
    int fails = 0;
    for (const auto& c : checks) {
        if (c.status == "fail") ++fails;
    }
    return fails;
}

std::string rat_string(const BigRat& v) {
    BigInt num = boost::multiprecision::numerator(v);
    BigInt den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

ordered_json to_json(const SuiteReport& report, bool include_timing) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["artifact"] = "hyperbounds";
    j["version"] = kArtifactVersion;
    j["suite"] = report.suite;
    j["config"] = report.config;
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["anchor"] = c.anchor;
        jc["status"] = c.status;
        if (!c.witness.empty()) jc["witness"] = c.witness;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    if (!report.extra.is_null()) j["extra"] = report.extra;
    j["overall"] = report.overall_pass() ? "pass" : "fail";
    if (include_timing) {
        ordered_json timing;
        timing["generated_at_unix"] = std::time(nullptr);
        timing["total_seconds"] = report.total_seconds;
        ordered_json per_check;
        for (const auto& c : report.checks) per_check[c.id] = c.elapsed_seconds;
        timing["checks"] = std::move(per_check);
        j["timing"] = std::move(timing);
    }
    return j;
}

std::string render_report(const SuiteReport& report, bool include_timing) {
    return to_json(report, include_timing).dump(2) + "\n";
}

ordered_json to_json(const ConjectureReport& report, bool include_timing) {
    ordered_json j;
    j["n"] = report.n;
    j["r"] = report.r;
    j["I0_tilde"] = report.I0_tilde.str();
    j["CA"] = rat_string(report.CA);
    j["I0"] = rat_string(report.I0);
    j["margin"] = rat_string(report.margin);
    j["mode"] = to_string(report.mode);
    if (report.mode != VerdictMode::exact) j["trunc"] = report.trunc;
    if (include_timing) j["timing"] = {{"elapsed_seconds", report.elapsed_seconds}};
    return j;
}

ordered_json to_json(const RatioRow& row) {
    ordered_json j;
    j["n"] = row.n;
    j["r"] = row.r;
    j["CA"] = rat_string(row.CA);
    j["CA_decimal"] = row.ca_decimal;
    j["log_CA_over_n"] = row.log_ca_over_n;
    j["mode"] = to_string(row.mode);
    return j;
}

ordered_json to_json(const CmrDecomposition& d) {
    ordered_json j;
    j["n"] = d.n;
    j["r"] = d.r;
    j["c"] = d.c;
    j["tau"] = d.tau;
    j["CMR"] = rat_string(d.CMR);
    j["CMR_T"] = rat_string(d.CMR_T);
    j["CMR_R"] = rat_string(d.CMR_R);
    j["CMR_T_plus"] = rat_string(d.CMR_T_plus);
    j["CMR_T_minus"] = rat_string(d.CMR_T_minus);
    j["CR"] = rat_string(d.CR);
    j["CR_T"] = rat_string(d.CR_T);
    j["CR_R"] = rat_string(d.CR_R);
    j["CR_T_plus"] = rat_string(d.CR_T_plus);
    j["CR_T_minus"] = rat_string(d.CR_T_minus);
    j["CR_inf"] = {{"box", rat_string(d.CR_inf_box)}, {"tail", rat_string(d.box_tail)},
                   {"exact", rat_string(d.CR_inf_exact)}};
    j["CR_inf_plus"] = {{"box", rat_string(d.CR_inf_plus_box)}, {"tail", rat_string(d.box_tail)}};
    j["CR_inf_minus"] = {{"box", rat_string(d.CR_inf_minus_box)}, {"tail", rat_string(d.box_tail)}};
    j["CRhat_inf"] = {{"box", rat_string(d.CRhat_inf_box)}, {"tail", rat_string(d.box_tail)},
                      {"exact", rat_string(d.CRhat_inf_exact)}};
    j["identities_ok"] = d.identities_ok;
    j["majorant_split_ok"] = d.majorant_split_ok;
    j["ineq_10_2_ok"] = d.ineq_10_2_ok;
    j["min_M_on_window"] = rat_string(d.min_M_on_window);
    j["minoration_derived"] = d.minoration_derived;
    j["minoration_quoted"] = d.minoration_quoted;
    j["min_M_meets_derived"] = d.min_M_meets_derived;
    j["min_M_meets_quoted"] = d.min_M_meets_quoted;
    j["prop54_constant_note"] = d.prop54_constant_note;
    return j;
}

}  // namespace hyperbounds
