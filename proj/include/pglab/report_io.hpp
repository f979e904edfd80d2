#pragma once

#include <cstdio>
#include <string>

#include "json.hpp"

#include "pglab/outcome.hpp"
#include "pglab/suite.hpp"

namespace pglab {

namespace detail {

inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline const char* class_name(ScanClass c) {
    switch (c) {
        case ScanClass::consistent: return "consistent";
        case ScanClass::violated: return "violated";
        default: return "inconclusive";
    }
}

} // namespace detail

// Stable JSON rendering: insertion-ordered keys, no floating timestamps except
// the one top-level field, so byte comparison after normalizing "timestamp"
// tests reproducibility.
inline nlohmann::ordered_json to_json(const VerificationReport& r) {
    using json = nlohmann::ordered_json;
    json root;
    root["report_version"] = 1;
    root["timestamp"] = r.timestamp;
    json cfg;
    cfg["claims"] = r.config.claims;
    cfg["target_abs_tol"] = r.config.target_abs_tol;
    cfg["include_scans"] = r.config.include_scans;
    cfg["exploratory_thetas"] = r.config.exploratory_thetas;
    cfg["gi_max"] = r.config.gi_max;
    cfg["noise_tol"] = r.config.noise_tol;
    root["config"] = cfg;
    std::size_t passed = 0;
    json failed_ids = json::array();
    for (const auto& o : r.outcomes) {
        if (o.passed)
            ++passed;
        else
            failed_ids.push_back(o.claim_id);
    }
    json summary;
    summary["checks"] = r.outcomes.size();
    summary["passed"] = passed;
    summary["failed"] = r.outcomes.size() - passed;
    summary["failed_claims"] = failed_ids;
    root["summary"] = summary;
    json outs = json::array();
    for (const auto& o : r.outcomes) {
        json j;
        j["claim_id"] = o.claim_id;
        j["passed"] = o.passed;
        j["margin"] = o.margin;
        if (o.witness_x)
            j["witness_x"] = *o.witness_x;
        else
            j["witness_x"] = nullptr;
        j["samples"] = o.samples;
        if (!o.witness_note.empty()) j["note"] = o.witness_note;
        outs.push_back(std::move(j));
    }
    root["outcomes"] = outs;
    json scans = json::array();
    for (const auto& s : r.scans) {
        json j;
        j["claim_id"] = s.claim_id;
        j["classification"] = detail::class_name(s.classification);
        j["observed"] = s.observed;
        if (s.witness) {
            json w;
            w["x"] = s.witness->first;
            w["value"] = s.witness->second;
            j["witness"] = w;
        } else {
            j["witness"] = nullptr;
        }
        json pts = json::array();
        for (const auto& p : s.sample_points) {
            json q;
            q["x"] = p.x;
            q["value"] = p.value;
            q["first_diff"] = p.first_diff;
            q["second_diff"] = p.second_diff;
            pts.push_back(std::move(q));
        }
        j["sample_points"] = pts;
        scans.push_back(std::move(j));
    }
    root["scans"] = scans;
    return root;
}

// One line per outcome, then scans, then a summary; greppable PASS/FAIL tags.
inline std::string render_text(const VerificationReport& r) {
    std::string out = "claim verification report  " + r.timestamp + "\n";
    std::size_t passed = 0;
    std::string failed_list;
    for (const auto& o : r.outcomes) {
        char line[256];
        if (o.witness_x) {
            std::snprintf(line, sizeof line, "%s %s margin=%.6g witness=%.9g samples=%zu",
                          o.passed ? "PASS" : "FAIL", o.claim_id.c_str(), o.margin,
                          *o.witness_x, o.samples);
        } else {
            std::snprintf(line, sizeof line, "%s %s margin=%.6g samples=%zu",
                          o.passed ? "PASS" : "FAIL", o.claim_id.c_str(), o.margin,
                          o.samples);
        }
        out += line;
        if (!o.witness_note.empty()) out += "  (" + o.witness_note + ")";
        out += "\n";
        if (o.passed) {
            ++passed;
        } else {
            if (!failed_list.empty()) failed_list += ", ";
            failed_list += o.claim_id;
        }
    }
    for (const auto& s : r.scans) {
        out += "SCAN " + s.claim_id + " " + detail::class_name(s.classification) +
               "  " + s.observed;
        if (s.witness)
            out += "  [witness x=" + detail::fmt_full(s.witness->first) +
                   " value=" + detail::fmt_full(s.witness->second) + "]";
        out += "\n";
    }
    char tally[128];
    std::snprintf(tally, sizeof tally, "checks: %zu  passed: %zu  failed: %zu\n",
                  r.outcomes.size(), passed, r.outcomes.size() - passed);
    out += tally;
    if (!failed_list.empty()) out += "failed: " + failed_list + "\n";
    return out;
}

// Outcome table; scans go to their own CSV since the row shapes differ.
inline std::string render_csv(const VerificationReport& r) {
    std::string out = "claim_id,passed,margin,witness_x,samples\n";
    for (const auto& o : r.outcomes) {
        out += o.claim_id;
        out += o.passed ? ",true," : ",false,";
        out += detail::fmt_full(o.margin);
        out += ",";
        if (o.witness_x) out += detail::fmt_full(*o.witness_x);
        out += "," + std::to_string(o.samples) + "\n";
    }
    return out;
}

// Scan samples in long form, one row per grid point.
inline std::string scan_csv(const std::vector<ConjectureScan>& scans) {
    std::string out = "claim_id,x,value,d1,d2\n";
    for (const auto& s : scans) {
        for (const auto& p : s.sample_points) {
            out += s.claim_id + "," + detail::fmt_full(p.x) + "," +
                   detail::fmt_full(p.value) + "," + detail::fmt_full(p.first_diff) +
                   "," + detail::fmt_full(p.second_diff) + "\n";
        }
    }
    return out;
}

} // namespace pglab
