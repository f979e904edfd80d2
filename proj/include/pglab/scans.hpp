#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pglab/checks.hpp"
#include "pglab/grid.hpp"
#include "pglab/outcome.hpp"
#include "pglab/paperfun.hpp"

namespace pglab {

namespace detail {

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Measured behaviour of fn over xs: samples with slopes and slope changes,
// uniformity flags for the four shape hypotheses, and the first sample
// breaking each one.  Slope comparisons carry a noise floor scaled by the
// local slope magnitude so classifications do not flip on rounding dust.
struct Behaviour {
    std::vector<ScanSample> samples;
    bool nondecreasing = true;
    bool nonincreasing = true;
    bool convex = true;
    bool concave = true;
    std::optional<std::pair<double, double>> up_break;      // against "increasing"
    std::optional<std::pair<double, double>> down_break;    // against "decreasing"
    std::optional<std::pair<double, double>> convex_break;
    std::optional<std::pair<double, double>> concave_break;
};

inline Behaviour scan_behaviour(const RealFn& fn, const std::vector<double>& xs,
                                double noise_tol) {
    Behaviour b;
    const std::size_t n = xs.size();
    std::vector<double> vs(n);
    for (std::size_t j = 0; j < n; ++j) vs[j] = checked_eval(fn, xs[j]);
    std::vector<double> slopes(n > 0 ? n - 1 : 0);
    for (std::size_t j = 0; j + 1 < n; ++j)
        slopes[j] = (vs[j + 1] - vs[j]) / (xs[j + 1] - xs[j]);
    b.samples.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        b.samples[j].x = xs[j];
        b.samples[j].value = vs[j];
        b.samples[j].first_diff = (j + 1 < n) ? slopes[j] : 0.0;
        b.samples[j].second_diff =
            (j >= 1 && j + 1 < n) ? slopes[j] - slopes[j - 1] : 0.0;
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double noise = noise_tol * std::max(1.0, std::abs(slopes[j]));
        if (slopes[j] < -noise) {
            b.nondecreasing = false;
            if (!b.up_break) b.up_break = {xs[j + 1], vs[j + 1]};
        }
        if (slopes[j] > noise) {
            b.nonincreasing = false;
            if (!b.down_break) b.down_break = {xs[j + 1], vs[j + 1]};
        }
    }
    for (std::size_t j = 0; j + 2 < n; ++j) {
        const double change = slopes[j + 1] - slopes[j];
        const double noise =
            noise_tol * std::max({1.0, std::abs(slopes[j]), std::abs(slopes[j + 1])});
        if (change < -noise) {
            b.convex = false;
            if (!b.convex_break) b.convex_break = {xs[j + 1], vs[j + 1]};
        }
        if (change > noise) {
            b.concave = false;
            if (!b.concave_break) b.concave_break = {xs[j + 1], vs[j + 1]};
        }
    }
    return b;
}

inline std::string direction_word(const Behaviour& b) {
    if (b.nondecreasing && b.nonincreasing) return "constant";
    if (b.nondecreasing) return "increasing";
    if (b.nonincreasing) return "decreasing";
    return "mixed direction";
}

inline std::string curvature_word(const Behaviour& b) {
    if (b.convex && b.concave) return "affine";
    if (b.convex) return "convex";
    if (b.concave) return "concave";
    return "mixed curvature";
}

} // namespace detail

// Curvature scan of h: conjectured concave on the (-1, 1) side and convex on
// the (1, inf) side.  Both grids are sampled; a break of the expected shape on
// either side classifies the scan as violated with the breaking sample as
// witness.  Fewer than 4 points on a side is inconclusive.  Never gates.
inline ConjectureScan scan_conjecture_h(const Grid& grid_inner, const Grid& grid_outer,
                                        double noise_tol = 1e-9,
                                        const EvalOptions& opt = {}) {
    const auto xs_in = grid_inner.points();
    const auto xs_out = grid_outer.points();
    if (xs_in.front() <= -1.0 || xs_in.back() >= 1.0)
        throw DomainError("scan_conjecture_h: inner grid must lie inside (-1, 1)");
    if (xs_out.front() <= 1.0)
        throw DomainError("scan_conjecture_h: outer grid must lie inside (1, inf)");
    ConjectureScan scan;
    scan.claim_id = "conj.h.curvature";
    const RealFn fn = [opt](double x) { return h(x, opt); };
    const auto b_in = detail::scan_behaviour(fn, xs_in, noise_tol);
    const auto b_out = detail::scan_behaviour(fn, xs_out, noise_tol);
    scan.sample_points = b_in.samples;
    scan.sample_points.insert(scan.sample_points.end(), b_out.samples.begin(),
                              b_out.samples.end());
    if (xs_in.size() < 4 || xs_out.size() < 4) {
        scan.classification = ScanClass::inconclusive;
        scan.observed = "grids too short to classify curvature";
        return scan;
    }
    if (!b_in.concave || !b_out.convex) {
        scan.classification = ScanClass::violated;
        scan.witness = !b_in.concave ? b_in.concave_break : b_out.convex_break;
        scan.observed = !b_in.concave ? "curvature break on the (-1,1) side"
                                      : "curvature break on the (1,inf) side";
        return scan;
    }
    scan.classification = ScanClass::consistent;
    scan.observed = "concave on the (-1,1) side, convex on the (1,inf) side";
    return scan;
}

// Direction scans of g_i for i = 1..i_max (1 <= i_max <= 6): conjectured
// strictly decreasing for odd i, increasing for even i, with far-field values
// near 1 (i = 1) or 0 (i >= 2), probed at probe_x.  A direction break beyond
// the noise floor classifies as violated; a missed probe alone is only
// inconclusive (one far sample cannot refute a limit).  Never gates.
inline std::vector<ConjectureScan> scan_conjecture_gi(int i_max, const Grid& grid,
                                                      double noise_tol = 1e-9,
                                                      const EvalOptions& opt = {},
                                                      double probe_x = 1e5,
                                                      double probe_tol = 1e-2) {
    if (i_max < 1 || i_max > 6)
        throw DomainError("scan_conjecture_gi: i_max must be in [1, 6]");
    const auto xs = grid.points();
    std::vector<ConjectureScan> scans;
    scans.reserve(static_cast<std::size_t>(i_max));
    for (int i = 1; i <= i_max; ++i) {
        ConjectureScan scan;
        scan.claim_id = "conj.g" + std::to_string(i);
        const RealFn fn = [i, opt](double x) { return g_i(x, i, opt); };
        const auto b = detail::scan_behaviour(fn, xs, noise_tol);
        scan.sample_points = b.samples;
        const bool odd = i % 2 == 1;
        const double probe = detail::checked_eval(fn, probe_x);
        const double expected_far = i == 1 ? 1.0 : 0.0;
        const bool probe_ok = std::abs(probe - expected_far) <= probe_tol;
        const std::string probe_txt = "g_" + std::to_string(i) + "(" +
                                      detail::fmt_g(probe_x) + ") = " +
                                      detail::fmt_g(probe) + ", conjectured limit " +
                                      detail::fmt_g(expected_far);
        if (xs.size() < 4) {
            scan.classification = ScanClass::inconclusive;
            scan.observed = "grid too short to classify; " + probe_txt;
        } else if (odd ? !b.nonincreasing : !b.nondecreasing) {
            scan.classification = ScanClass::violated;
            scan.witness = odd ? b.down_break : b.up_break;
            scan.observed = std::string("direction break against conjectured ") +
                            (odd ? "decrease" : "increase") + "; " + probe_txt;
        } else if (!probe_ok) {
            scan.classification = ScanClass::inconclusive;
            scan.observed = "direction as conjectured but far probe off; " + probe_txt;
        } else {
            scan.classification = ScanClass::consistent;
            scan.observed = std::string(odd ? "decreasing" : "increasing") +
                            " as conjectured; " + probe_txt;
        }
        scans.push_back(std::move(scan));
    }
    return scans;
}

// Open-ended classification of phi_theta for one theta: records direction and
// curvature labels without asserting anything.  Uniform behaviour on both axes
// is consistent; anything mixed is inconclusive.  Never violated, never gates.
inline ConjectureScan explore_phi_theta(double theta, const Grid& grid,
                                        double noise_tol = 1e-9,
                                        const EvalOptions& opt = {},
                                        std::string claim_id = "thm2.explore") {
    const auto xs = grid.points();
    ConjectureScan scan;
    scan.claim_id = std::move(claim_id);
    const ThetaParam p{theta};
    const RealFn fn = [p, opt](double x) { return phi_theta(x, p, opt); };
    const auto b = detail::scan_behaviour(fn, xs, noise_tol);
    scan.sample_points = b.samples;
    const std::string label = detail::direction_word(b) + ", " + detail::curvature_word(b);
    if (xs.size() < 4) {
        scan.classification = ScanClass::inconclusive;
        scan.observed = "grid too short to classify";
    } else if ((b.nondecreasing || b.nonincreasing) && (b.convex || b.concave)) {
        scan.classification = ScanClass::consistent;
        scan.observed = label;
    } else {
        scan.classification = ScanClass::inconclusive;
        scan.observed = label;
    }
    return scan;
}

// Behaviour scans of the generalized difference for each parameter tuple.
// Labels each as increasing/decreasing/convex/concave or mixed; mixed
// behaviour is inconclusive and carries the first direction break as witness.
// An empty parameter list yields an empty result.  Never gates.
inline std::vector<ConjectureScan> scan_open_problem(
    const std::vector<OpenProblemParams>& params, const Grid& grid,
    double noise_tol = 1e-9, const EvalOptions& opt = {}) {
    const auto xs = grid.points();
    std::vector<ConjectureScan> scans;
    scans.reserve(params.size());
    for (std::size_t t = 0; t < params.size(); ++t) {
        ConjectureScan scan;
        scan.claim_id = "open." + std::to_string(t + 1);
        const OpenProblemParams p = params[t];
        validate(p);
        const RealFn fn = [p, opt](double x) { return open_problem_fn(x, p, opt); };
        const auto b = detail::scan_behaviour(fn, xs, noise_tol);
        scan.sample_points = b.samples;
        const std::string label =
            detail::direction_word(b) + ", " + detail::curvature_word(b);
        if (xs.size() < 4) {
            scan.classification = ScanClass::inconclusive;
            scan.observed = "grid too short to classify";
        } else if (!b.nondecreasing && !b.nonincreasing) {
            scan.classification = ScanClass::inconclusive;
            scan.observed = label;
            scan.witness = b.up_break ? b.up_break : b.down_break;
        } else {
            scan.classification = ScanClass::consistent;
            scan.observed = label;
        }
        scans.push_back(std::move(scan));
    }
    return scans;
}

} // namespace pglab
