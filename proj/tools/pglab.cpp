// Command-line front end: evaluate the workbench functions, run the claim
// verification suite, and emit conjecture/exploration scans.
//
// Exit codes: 0 success, 1 at least one selected check failed, 2 usage error,
// 3 evaluation error (domain, pole, or convergence failure).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pglab/pglab.hpp"

namespace {

using namespace pglab;

// Problems with flags, files, or file formats; distinct from evaluation
// failures so they map to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// POLYGAMMA_LAB_TOL overrides the evaluation accuracy target when it parses
// as a finite positive number; anything else is ignored.
std::optional<double> env_tol_override() {
    const char* raw = std::getenv("POLYGAMMA_LAB_TOL");
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0') return std::nullopt;
    if (!std::isfinite(v) || !(v > 0.0)) return std::nullopt;
    return v;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct EvalArgs {
    std::string fn;
    double x = 0.0;
    double theta = 1.0;
    std::optional<int> i;
};

int require_i(const EvalArgs& a, int lo, int hi) {
    if (!a.i)
        throw UsageError("eval " + a.fn + ": --i is required");
    if (*a.i < lo || *a.i > hi)
        throw UsageError("eval " + a.fn + ": --i must be in [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
    return *a.i;
}

int run_eval(const EvalArgs& a, const EvalOptions& opt) {
    double value = 0.0;
    double est = 0.0;
    const auto derived = [&](double v) {
        value = v;
        est = 1e-12 * std::max(1.0, std::abs(v));
    };
    const ThetaParam tp{a.theta};
    if (a.fn == "digamma") {
        const EvalResult r = digamma(a.x, opt);
        value = r.value;
        est = r.est_error;
    } else if (a.fn == "polygamma") {
        const EvalResult r = polygamma(require_i(a, 1, 20), a.x, opt);
        value = r.value;
        est = r.est_error;
    } else if (a.fn == "binet") {
        value = binet_oracle(a.x);
        est = 1e-10;   // quadrature tolerance with headroom
    } else if (a.fn == "phi") {
        derived(phi(a.x, opt));
    } else if (a.fn == "phi_theta") {
        derived(phi_theta(a.x, tp, opt));
    } else if (a.fn == "phi_theta_d1") {
        derived(phi_theta_d1(a.x, tp, opt));
    } else if (a.fn == "phi_theta_d2") {
        derived(phi_theta_d2(a.x, tp, opt));
    } else if (a.fn == "varphi") {
        derived(varphi(a.theta, a.x));
    } else if (a.fn == "varphi_dx") {
        derived(varphi_dx(a.theta, a.x));
    } else if (a.fn == "delta") {
        derived(delta_fn(a.x));
    } else if (a.fn == "rho") {
        derived(rho_fn(a.x));
    } else if (a.fn == "aux_h") {
        derived(aux_h(a.x));
    } else if (a.fn == "equiv_gap") {
        derived(equiv_ineq_gap(a.x));
    } else if (a.fn == "f") {
        derived(f(a.x, opt));
    } else if (a.fn == "g") {
        derived(g(a.x, opt));
    } else if (a.fn == "h") {
        derived(h(a.x, opt));
    } else if (a.fn == "f_i") {
        derived(f_i(a.x, require_i(a, 1, 20), opt));
    } else if (a.fn == "g_i") {
        derived(g_i(a.x, require_i(a, 1, 20), opt));
    } else if (a.fn == "mu") {
        derived(mu(require_i(a, 1, 1000000000), a.x));
    } else {
        throw UsageError(
            "eval: unknown function '" + a.fn +
            "' (expected one of digamma, polygamma, binet, phi, phi_theta, "
            "phi_theta_d1, phi_theta_d2, varphi, varphi_dx, delta, rho, aux_h, "
            "equiv_gap, f, g, h, f_i, g_i, mu)");
    }
    std::printf("%.17g %.9g\n", value, est);
    return 0;
}

struct VerifyArgs {
    std::string claims;
    std::string out_path;
    std::string format = "text";
};

int run_verify(const VerifyArgs& a) {
    SuiteConfig cfg;
    cfg.claims = split_csv(a.claims);
    if (const auto tol = env_tol_override()) cfg.target_abs_tol = *tol;

    const auto known = registered_claim_ids(cfg);
    for (const auto& sel : cfg.claims) {
        bool matched = false;
        for (const auto& id : known) matched = matched || id.rfind(sel, 0) == 0;
        if (!matched)
            std::cerr << "note: no claims match selector '" << sel << "'\n";
    }

    const VerificationReport report = run_full_suite(cfg);
    std::string body;
    if (a.format == "json")
        body = to_json(report).dump(2) + "\n";
    else if (a.format == "csv")
        body = render_csv(report);
    else
        body = render_text(report);

    if (!a.out_path.empty()) {
        std::ofstream out(a.out_path);
        if (!out) throw UsageError("verify: cannot open output path " + a.out_path);
        out << body;
    } else {
        std::cout << body;
    }
    for (const auto& o : report.outcomes)
        if (!o.passed) return 1;
    return 0;
}

struct ExploreArgs {
    std::string mode;
    std::string params_file;
    std::optional<double> lo;
    std::optional<double> hi;
    std::optional<int> count;
    std::string spacing = "log";
};

std::vector<OpenProblemParams> load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("explore open: cannot read params file " + path);
    std::vector<OpenProblemParams> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string at = "params file line " + std::to_string(lineno);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            throw UsageError(at + ": " + e.what());
        }
        if (!j.is_object()) throw UsageError(at + ": expected a JSON object");
        OpenProblemParams p;
        try {
            for (const char* field : {"i", "k", "alpha", "beta", "delta", "lambda",
                                      "mu", "tau"}) {
                if (!j.contains(field))
                    throw UsageError(at + ": missing field '" + field + "'");
            }
            p.i = j.at("i").get<int>();
            p.k = j.at("k").get<int>();
            p.alpha = j.at("alpha").get<double>();
            p.beta = j.at("beta").get<double>();
            p.delta = j.at("delta").get<double>();
            p.lambda = j.at("lambda").get<double>();
            p.mu = j.at("mu").get<double>();
            p.tau = j.at("tau").get<double>();
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& e) {
            throw UsageError(at + ": " + e.what());
        }
        out.push_back(p);
    }
    if (out.empty()) throw UsageError("explore open: params file has no entries");
    return out;
}

// Grid overrides apply to the gi and open scans; the h scan keeps its fixed
// two-sided grid pair because its domain split at x = 1 is part of the claim.
Grid override_grid(const ExploreArgs& a, const Grid& fallback) {
    if (!a.lo && !a.hi && !a.count && a.spacing == "log") return fallback;
    const double lo = a.lo.value_or(1e-3);
    const double hi = a.hi.value_or(100.0);
    const int count = a.count.value_or(400);
    if (count < 2) throw UsageError("explore: --count must be at least 2");
    return a.spacing == "linear" ? Grid::linear_grid(lo, hi, count)
                                 : Grid::log_grid(lo, hi, count);
}

int run_explore(const ExploreArgs& a) {
    EvalOptions opt;
    if (const auto tol = env_tol_override()) opt.target_abs_tol = *tol;

    std::vector<ConjectureScan> scans;
    if (a.mode == "h") {
        if (a.lo || a.hi || a.count || a.spacing != "log")
            std::cerr << "note: grid overrides do not apply to the h scan\n";
        scans.push_back(scan_conjecture_h(Grid::offset_log_grid(1e-3, 1.99, 400, -1.0),
                                          Grid::log_grid(1.01, 100.0, 400), 1e-9, opt));
    } else if (a.mode == "gi") {
        const Grid grid =
            override_grid(a, Grid::offset_log_grid(1e-3, 101.0, 400, -1.0));
        scans = scan_conjecture_gi(4, grid, 1e-9, opt);
    } else {
        if (a.params_file.empty())
            throw UsageError("explore open: --params-file is required");
        const auto params = load_params(a.params_file);
        const Grid grid = override_grid(a, Grid::log_grid(1e-3, 1e3, 400));
        scans = scan_open_problem(params, grid, 1e-9, opt);
    }

    std::cout << scan_csv(scans);
    for (const auto& s : scans) {
        std::cerr << s.claim_id << " " << detail::class_name(s.classification) << "  "
                  << s.observed << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"special-function workbench: evaluation, claim verification, scans"};
    app.require_subcommand(1);

    EvalArgs ea;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one function at a point");
    eval_cmd->add_option("fn", ea.fn, "function name")->required();
    eval_cmd->add_option("x", ea.x, "evaluation point")->required();
    eval_cmd->add_option("--theta", ea.theta, "theta parameter (default 1)");
    eval_cmd->add_option("--i", ea.i, "integer order / index");

    VerifyArgs va;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the claim verification suite");
    verify_cmd->add_option("--claims", va.claims,
                           "comma-separated claim-id prefixes (default: all)");
    verify_cmd->add_option("--out", va.out_path, "write the report to this path");
    verify_cmd->add_option("--format", va.format, "report format (default text)")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    ExploreArgs xa;
    CLI::App* explore_cmd =
        app.add_subcommand("explore", "run conjecture / open-problem scans");
    explore_cmd->add_option("mode", xa.mode, "what to scan: h, gi, or open")
        ->required()
        ->check(CLI::IsMember({"h", "gi", "open"}));
    explore_cmd->add_option("--params-file", xa.params_file,
                            "open mode: one JSON parameter object per line");
    explore_cmd->add_option("--lo", xa.lo, "grid lower endpoint (gi/open)");
    explore_cmd->add_option("--hi", xa.hi, "grid upper endpoint (gi/open)");
    explore_cmd->add_option("--count", xa.count, "grid point count (gi/open)");
    explore_cmd->add_option("--spacing", xa.spacing, "grid spacing: linear or log")
        ->check(CLI::IsMember({"linear", "log"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (eval_cmd->parsed()) {
            EvalOptions opt;
            if (const auto tol = env_tol_override()) opt.target_abs_tol = *tol;
            return run_eval(ea, opt);
        }
        if (verify_cmd->parsed()) return run_verify(va);
        return run_explore(xa);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "usage: pglab eval <fn> <x> [--theta T] [--i N]\n"
                  << "       pglab verify [--claims id,...] [--out path] [--format f]\n"
                  << "       pglab explore <h|gi|open> [--params-file path]\n";
        return 2;
    } catch (const EvalError& e) {
        std::cerr << "error at x = " << e.where() << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
