#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "pglab/report_io.hpp"
#include "pglab/suite.hpp"

#include "golden.hpp"

using namespace pglab;

namespace {

// The full default run is expensive; share one instance across test cases.
const VerificationReport& full_report() {
    static const VerificationReport r = run_full_suite({});
    return r;
}

const CheckOutcome& outcome_for(const VerificationReport& r, const std::string& id) {
    for (const auto& o : r.outcomes)
        if (o.claim_id == id) return o;
    FAIL("no outcome with id " + id);
    static CheckOutcome dummy;
    return dummy;
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("claim catalog is stable, unique, and prefix-selectable") {
    const auto ids = registered_claim_ids({});
    REQUIRE(ids.size() == 84);
    REQUIRE(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
    for (const char* expected :
         {"thm1.increasing", "cor1.tetragamma", "cor2.trigamma.theta0.25",
          "thm2.limit.zero.theta0.5", "lemma2.binet.agreement",
          "lemma3.cm.alpha08.violation", "thm3.counterexample",
          "thm4.g.limit.neg_one", "thm6.f4.limit.neg_one", "proof.mu.limit",
          "identity.u2der1.positive", "conj.h.curvature", "conj.g4",
          "thm2.explore.theta1.5"}) {
        INFO(expected);
        REQUIRE(std::find(ids.begin(), ids.end(), expected) != ids.end());
    }

    REQUIRE(claim_selected("thm1.limit.zero", {"thm1"}));
    REQUIRE(claim_selected("thm1.limit.zero", {"thm1.limit."}));
    REQUIRE(claim_selected("thm1.limit.zero", {}));
    REQUIRE_FALSE(claim_selected("thm1.limit.zero", {"thm2"}));
    REQUIRE_FALSE(claim_selected("thm1.limit.zero", {"hm1"}));
}

TEST_CASE("full suite: exactly the one known-red check fails") {
    const auto& r = full_report();
    REQUIRE(r.outcomes.size() == 78);

    std::vector<std::string> failed;
    for (const auto& o : r.outcomes)
        if (!o.passed) failed.push_back(o.claim_id);
    REQUIRE(failed == std::vector<std::string>{"thm4.g.limit.neg_one"});

    // The red check: the boundary-approach deviation of g at the last probe
    // sits at ~2.4e-3 against the pinned 1e-3 tolerance.
    const auto& red = outcome_for(r, "thm4.g.limit.neg_one");
    REQUIRE(red.samples == 7);
    REQUIRE(red.witness_x.has_value());
    REQUIRE(std::abs(*red.witness_x - (-1.0 + 1e-6)) <= 1e-15);
    REQUIRE(red.witness_note.empty());
    REQUIRE(red.margin > -1.5e-3);
    REQUIRE(red.margin < -1.3e-3);
    const double target = 1.0 + Constants::euler_gamma - Constants::pi_sq_over_6;
    const double dev = std::abs(g(*red.witness_x) - target);
    REQUIRE(std::abs(dev - golden::kGLimitDevAtEps6) <= 1e-9);
    REQUIRE(std::abs(red.margin - (1e-3 - dev)) <= 1e-15);
}

TEST_CASE("full suite: spot-check margins of representative green claims") {
    const auto& r = full_report();

    const auto& mono = outcome_for(r, "thm1.increasing");
    REQUIRE(mono.passed);
    REQUIRE(mono.samples == 2000);
    REQUIRE(mono.margin > 0.0);

    const auto& cm = outcome_for(r, "lemma3.cm.alpha1.direct");
    REQUIRE(cm.passed);
    REQUIRE(cm.margin > 1e-14);
    REQUIRE(cm.margin < 3e-14);
    REQUIRE(cm.witness_note == "minimum slack at order n = 8");

    const auto& viol = outcome_for(r, "lemma3.cm.alpha08.violation");
    REQUIRE(viol.passed);
    REQUIRE(viol.witness_x.has_value());
    REQUIRE(*viol.witness_x == 0.1);
    REQUIRE(viol.margin > 1e12);

    const auto& cx = outcome_for(r, "thm3.counterexample");
    REQUIRE(cx.passed);
    REQUIRE(std::abs(cx.margin - golden::kCounterexampleGap) <= 1e-9);
}

TEST_CASE("full suite: conjecture and exploration scans classify as consistent") {
    const auto& r = full_report();
    REQUIRE(r.scans.size() == 6);
    const std::vector<std::string> expected_ids = {
        "conj.h.curvature", "conj.g1", "conj.g2", "conj.g3", "conj.g4",
        "thm2.explore.theta1.5"};
    for (std::size_t j = 0; j < expected_ids.size(); ++j) {
        INFO(expected_ids[j]);
        REQUIRE(r.scans[j].claim_id == expected_ids[j]);
        REQUIRE(r.scans[j].classification == ScanClass::consistent);
    }
    REQUIRE(r.scans[0].observed ==
            "concave on the (-1,1) side, convex on the (1,inf) side");
    REQUIRE(r.scans[0].sample_points.size() == 800);
    REQUIRE(r.scans[1].observed.find("decreasing as conjectured") != std::string::npos);
    REQUIRE(r.scans[2].observed.find("increasing as conjectured") != std::string::npos);
    for (std::size_t j = 1; j <= 4; ++j)
        REQUIRE(r.scans[j].sample_points.size() == 400);
    REQUIRE(r.scans[5].observed == "decreasing, convex");
    REQUIRE(r.scans[5].sample_points.size() == 400);
}

TEST_CASE("selection narrows both checks and scans") {
    SuiteConfig cfg;
    cfg.claims = {"thm3.sandwich"};
    const auto r = run_full_suite(cfg);
    REQUIRE(r.outcomes.size() == 2);
    REQUIRE(r.outcomes[0].claim_id == "thm3.sandwich.positive");
    REQUIRE(r.outcomes[1].claim_id == "thm3.sandwich.negative");
    REQUIRE(r.outcomes[0].passed);
    REQUIRE(r.outcomes[1].passed);
    REQUIRE(r.scans.empty());

    cfg.claims = {"conj"};
    const auto rc = run_full_suite(cfg);
    REQUIRE(rc.outcomes.empty());
    REQUIRE(rc.scans.size() == 5);     // curvature scan plus the four g_i scans

    cfg.claims = {"zzz"};
    const auto rz = run_full_suite(cfg);
    REQUIRE(rz.outcomes.empty());
    REQUIRE(rz.scans.empty());
    REQUIRE(rz.timestamp.size() == 20);
}

TEST_CASE("scans can be disabled independently of selection") {
    SuiteConfig cfg;
    cfg.claims = {"conj.g1"};
    const auto with_scans = run_full_suite(cfg);
    REQUIRE(with_scans.outcomes.empty());
    REQUIRE(with_scans.scans.size() == 1);
    REQUIRE(with_scans.scans[0].claim_id == "conj.g1");

    cfg.include_scans = false;
    const auto without = run_full_suite(cfg);
    REQUIRE(without.outcomes.empty());
    REQUIRE(without.scans.empty());
}

TEST_CASE("two runs of the same configuration are byte-identical") {
    VerificationReport a = full_report();
    VerificationReport b = run_full_suite({});
    b.timestamp = a.timestamp;         // the one intentionally varying field
    REQUIRE(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("text rendering carries greppable verdict lines") {
    const std::string text = render_text(full_report());
    REQUIRE(text.rfind("claim verification report", 0) == 0);
    REQUIRE(text.find("PASS thm1.increasing margin=") != std::string::npos);
    REQUIRE(text.find("FAIL thm4.g.limit.neg_one margin=") != std::string::npos);
    REQUIRE(text.find("SCAN conj.h.curvature consistent") != std::string::npos);
    REQUIRE(text.find("SCAN thm2.explore.theta1.5 consistent  decreasing, convex") !=
            std::string::npos);
    REQUIRE(text.find("checks: 78  passed: 77  failed: 1") != std::string::npos);
    REQUIRE(text.find("failed: thm4.g.limit.neg_one") != std::string::npos);
}

TEST_CASE("JSON rendering has the documented shape") {
    const auto root = to_json(full_report());
    REQUIRE(root.at("report_version").get<int>() == 1);
    REQUIRE(root.at("timestamp").get<std::string>().size() == 20);

    const auto& cfg = root.at("config");
    REQUIRE(cfg.at("claims").size() == 0);
    REQUIRE(cfg.at("target_abs_tol").get<double>() == 1e-13);
    REQUIRE(cfg.at("include_scans").get<bool>());
    REQUIRE(cfg.at("exploratory_thetas") == nlohmann::ordered_json::array({1.5}));
    REQUIRE(cfg.at("gi_max").get<int>() == 4);
    REQUIRE(cfg.at("noise_tol").get<double>() == 1e-12);

    const auto& summary = root.at("summary");
    REQUIRE(summary.at("checks").get<std::size_t>() == 78);
    REQUIRE(summary.at("passed").get<std::size_t>() == 77);
    REQUIRE(summary.at("failed").get<std::size_t>() == 1);
    REQUIRE(summary.at("failed_claims") ==
            nlohmann::ordered_json::array({"thm4.g.limit.neg_one"}));

    const auto& outs = root.at("outcomes");
    REQUIRE(outs.size() == 78);
    REQUIRE(outs[0].at("claim_id").get<std::string>() == "thm1.increasing");
    REQUIRE(outs[0].at("passed").get<bool>());
    REQUIRE(outs[0].at("witness_x").is_number());
    for (const auto& o : outs) {
        if (o.at("claim_id").get<std::string>() != "thm4.g.limit.neg_one") continue;
        REQUIRE_FALSE(o.at("passed").get<bool>());
        REQUIRE(o.contains("note") == false);   // fails at the final probe, no growth
        REQUIRE(std::abs(o.at("witness_x").get<double>() - (-1.0 + 1e-6)) <= 1e-15);
    }

    const auto& scans = root.at("scans");
    REQUIRE(scans.size() == 6);
    REQUIRE(scans[5].at("claim_id").get<std::string>() == "thm2.explore.theta1.5");
    REQUIRE(scans[5].at("classification").get<std::string>() == "consistent");
    REQUIRE(scans[5].at("witness").is_null());
    REQUIRE(scans[5].at("sample_points").size() == 400);
}

TEST_CASE("CSV renderings are one row per outcome and per scan point") {
    const std::string csv = render_csv(full_report());
    REQUIRE(csv.rfind("claim_id,passed,margin,witness_x,samples\n", 0) == 0);
    REQUIRE(count_lines(csv) == 79);
    REQUIRE(csv.find("thm4.g.limit.neg_one,false,") != std::string::npos);

    const std::string scans = scan_csv(full_report().scans);
    REQUIRE(scans.rfind("claim_id,x,value,d1,d2\n", 0) == 0);
    REQUIRE(count_lines(scans) == 2801);   // 800 + 4*400 + 400 samples + header
    REQUIRE(scans.find("conj.g3,") != std::string::npos);
}

TEST_CASE("timestamps are ISO-8601 UTC") {
    const std::string ts = utc_timestamp_now();
    REQUIRE(ts.size() == 20);
    REQUIRE(ts[4] == '-');
    REQUIRE(ts[7] == '-');
    REQUIRE(ts[10] == 'T');
    REQUIRE(ts[13] == ':');
    REQUIRE(ts[16] == ':');
    REQUIRE(ts[19] == 'Z');
}
