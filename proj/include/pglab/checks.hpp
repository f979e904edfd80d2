#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pglab/errors.hpp"
#include "pglab/grid.hpp"
#include "pglab/outcome.hpp"
#include "pglab/paperfun.hpp"

namespace pglab {

enum class Direction { increasing, decreasing };
enum class Curvature { convex, concave };
enum class Approach { zero_plus, infinity, neg_one_plus };

using RealFn = std::function<double(double)>;

namespace detail {

// Wraps evaluation failures so a reported witness carries the abscissa.
inline double checked_eval(const RealFn& fn, double x) {
    try {
        return fn(x);
    } catch (const EvalError&) {
        throw;
    } catch (const std::exception& e) {
        throw EvalError(x, e.what());
    }
}

inline std::vector<double> eval_all(const RealFn& fn, const std::vector<double>& xs) {
    std::vector<double> vs(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) vs[j] = checked_eval(fn, xs[j]);
    return vs;
}

// Noise floor for a strict inequality between values of the listed sizes:
// tol scaled by the local magnitude, floored at 1 so claims about values of
// order one are not held to sub-rounding strictness.
inline double noise_floor(double tol, std::initializer_list<double> values) {
    double scale = 1.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    return tol * scale;
}

// Shared slack-tracking: records the minimum signed slack and its location,
// and flips `passed` once any slack falls to or below its noise floor.
struct SlackTracker {
    double min_slack = std::numeric_limits<double>::infinity();
    std::optional<double> min_x;
    bool passed = true;
    void observe(double slack, double noise, double x) {
        if (std::isnan(slack)) {   // undefined comparison can never certify
            passed = false;
            min_slack = -std::numeric_limits<double>::infinity();
            min_x = x;
            return;
        }
        if (slack < min_slack) {
            min_slack = slack;
            min_x = x;
        }
        if (slack <= -noise) passed = false;
    }
    void finish(CheckOutcome& out) const {
        out.passed = passed;
        // +inf means nothing was observed (every pair skipped): vacuous pass.
        out.margin =
            min_slack == std::numeric_limits<double>::infinity() ? 0.0 : min_slack;
        out.witness_x = min_x;
    }
};

} // namespace detail

// Strict monotonicity over consecutive grid points.  Pairs closer than 1e-6
// are skipped rather than asserted (the signal there is below the evaluation
// noise); margin is the minimum signed forward difference.
inline CheckOutcome check_monotone(std::string claim_id, const RealFn& fn,
                                   const Grid& grid, Direction direction, double tol) {
    const auto xs = grid.points();
    const auto vs = detail::eval_all(fn, xs);
    CheckOutcome out;
    out.claim_id = std::move(claim_id);
    out.samples = xs.size();
    detail::SlackTracker tracker;
    for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
        if (xs[j + 1] - xs[j] < 1e-6) continue;
        const double diff = direction == Direction::increasing ? vs[j + 1] - vs[j]
                                                               : vs[j] - vs[j + 1];
        tracker.observe(diff, detail::noise_floor(tol, {vs[j], vs[j + 1]}), xs[j]);
    }
    tracker.finish(out);
    return out;
}

// Convexity (or concavity) through consecutive secant slopes: on a non-uniform
// grid the sign of s_{j+1} - s_j equals the sign of the second divided
// difference, which a plain three-point second difference does not preserve.
inline CheckOutcome check_convexity(std::string claim_id, const RealFn& fn,
                                    const Grid& grid, Curvature sense, double tol) {
    const auto xs = grid.points();
    if (xs.size() < 3)
        throw DomainError("check_convexity: grid needs at least 3 points");
    const auto vs = detail::eval_all(fn, xs);
    std::vector<double> slopes(xs.size() - 1);
    for (std::size_t j = 0; j + 1 < xs.size(); ++j)
        slopes[j] = (vs[j + 1] - vs[j]) / (xs[j + 1] - xs[j]);
    CheckOutcome out;
    out.claim_id = std::move(claim_id);
    out.samples = xs.size();
    detail::SlackTracker tracker;
    for (std::size_t j = 0; j + 1 < slopes.size(); ++j) {
        const double diff = sense == Curvature::convex ? slopes[j + 1] - slopes[j]
                                                       : slopes[j] - slopes[j + 1];
        tracker.observe(diff, detail::noise_floor(tol, {slopes[j], slopes[j + 1]}),
                        xs[j + 1]);
    }
    tracker.finish(out);
    return out;
}

// Probe abscissae approaching the named boundary: 10^{-k} toward 0+, 10^{k}
// toward infinity, -1 + 10^{-k} toward -1 from above, k starting at
// first_exponent.
inline std::vector<double> approach_sequence(Approach approach, std::size_t seq_len,
                                             int first_exponent = 1) {
    std::vector<double> xs(seq_len);
    for (std::size_t j = 0; j < seq_len; ++j) {
        const double e = static_cast<double>(first_exponent + static_cast<int>(j));
        switch (approach) {
            case Approach::zero_plus: xs[j] = std::pow(10.0, -e); break;
            case Approach::infinity: xs[j] = std::pow(10.0, e); break;
            case Approach::neg_one_plus: xs[j] = -1.0 + std::pow(10.0, -e); break;
        }
    }
    return xs;
}

// Limit certification along a geometric probe sequence.  For a finite target
// the final deviation must be within tol and no step may grow the deviation
// while it is still above tol.  For an infinite target the proxy is: correct
// sign at the last probe, magnitude at least 1e6, and magnitudes nondecreasing
// along the whole sequence; margin is then |last| - 1e6.
inline CheckOutcome check_limit(std::string claim_id, const RealFn& fn, double target,
                                Approach approach, std::size_t seq_len, double tol,
                                int first_exponent = 1) {
    if (seq_len < 3) throw DomainError("check_limit: seq_len must be >= 3");
    const auto xs = approach_sequence(approach, seq_len, first_exponent);
    const auto vs = detail::eval_all(fn, xs);
    CheckOutcome out;
    out.claim_id = std::move(claim_id);
    out.samples = xs.size();
    if (std::isinf(target)) {
        bool ok = (target > 0.0) == (vs.back() > 0.0) && std::abs(vs.back()) >= 1e6;
        std::optional<double> bad_x;
        for (std::size_t j = 0; j + 1 < vs.size(); ++j) {
            if (std::abs(vs[j + 1]) < std::abs(vs[j])) {
                ok = false;
                if (!bad_x) bad_x = xs[j + 1];
            }
        }
        out.passed = ok;
        out.margin = std::abs(vs.back()) - 1e6;
        out.witness_x = bad_x ? bad_x : std::optional<double>(xs.back());
        if (!ok && bad_x) out.witness_note = "magnitude stopped growing";
        return out;
    }
    std::vector<double> devs(vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j) devs[j] = std::abs(vs[j] - target);
    bool ok = devs.back() <= tol;
    std::optional<double> bad_x;
    for (std::size_t j = 0; j + 1 < devs.size(); ++j) {
        if (devs[j + 1] > std::max(devs[j], tol)) {
            ok = false;
            if (!bad_x) bad_x = xs[j + 1];
        }
    }
    out.passed = ok;
    out.margin = tol - devs.back();
    out.witness_x = bad_x ? bad_x : std::optional<double>(xs.back());
    if (!ok && bad_x) out.witness_note = "deviation grew along the approach";
    return out;
}

// Strict two-sided ordering lower < mid < upper of the sandwich bounds over a
// grid; on grids inside (-1, 0) the expected ordering is reversed.  Margin is
// the smaller of the two gaps, minimized over the grid.
inline CheckOutcome check_sandwich(std::string claim_id, const Grid& grid, double tol,
                                   const EvalOptions& opt = {}) {
    const auto xs = grid.points();
    CheckOutcome out;
    out.claim_id = std::move(claim_id);
    out.samples = xs.size();
    const bool reversed = !xs.empty() && xs.front() < 0.0;
    detail::SlackTracker tracker;
    for (const double x : xs) {
        SandwichBounds b{};
        try {
            b = sandwich_bounds(x, opt);
        } catch (const EvalError&) {
            throw;
        } catch (const std::exception& e) {
            throw EvalError(x, e.what());
        }
        const double lo_gap = reversed ? b.lower - b.mid : b.mid - b.lower;
        const double hi_gap = reversed ? b.mid - b.upper : b.upper - b.mid;
        const double noise = detail::noise_floor(tol, {b.lower, b.mid, b.upper});
        tracker.observe(lo_gap, noise, x);
        tracker.observe(hi_gap, noise, x);
    }
    tracker.finish(out);
    return out;
}

// fn(x) > fn(x + step) - noise over the grid (a one-step decrease claim);
// a constant function passes with margin 0.
inline CheckOutcome step_comparison(std::string claim_id, const RealFn& fn,
                                    const Grid& grid, double step, double tol) {
    if (!(step > 0.0)) throw DomainError("step_comparison: step must be positive");
    const auto xs = grid.points();
    CheckOutcome out;
    out.claim_id = std::move(claim_id);
    out.samples = xs.size();
    detail::SlackTracker tracker;
    for (const double x : xs) {
        const double a = detail::checked_eval(fn, x);
        const double b = detail::checked_eval(fn, x + step);
        tracker.observe(a - b, detail::noise_floor(tol, {a, b}), x);
    }
    tracker.finish(out);
    return out;
}

// One- or two-sided range check over explicit abscissae.  A +inf sample
// satisfies a lower-bound-only claim (overflow of a provably large positive
// value) and is excluded from the margin minimum.
inline CheckOutcome check_bound(std::string claim_id, const RealFn& fn,
                                const std::vector<double>& xs,
                                std::optional<double> lower, std::optional<double> upper,
                                double tol) {
    if (!lower && !upper)
        throw DomainError("check_bound: at least one bound is required");
    CheckOutcome out;
    out.claim_id = std::move(claim_id);
    out.samples = xs.size();
    detail::SlackTracker tracker;
    for (const double x : xs) {
        const double v = detail::checked_eval(fn, x);
        if (std::isinf(v) && v > 0.0 && !upper) continue;
        const double bl = lower ? *lower : 0.0;
        const double bu = upper ? *upper : 0.0;
        const double noise = detail::noise_floor(tol, {v, lower ? bl : 0.0, upper ? bu : 0.0});
        if (lower) tracker.observe(v - bl, noise, x);
        if (upper) tracker.observe(bu - v, noise, x);
    }
    tracker.finish(out);
    return out;
}

// Inverts an inner outcome: passes exactly when the inner check failed AND
// recorded a witness, i.e. when an expected violation was actually observed.
inline CheckOutcome expect_violation(std::string claim_id, const CheckOutcome& inner) {
    CheckOutcome out;
    out.claim_id = std::move(claim_id);
    out.passed = !inner.passed && inner.witness_x.has_value();
    out.witness_x = inner.witness_x;
    out.margin = -inner.margin;
    out.samples = inner.samples;
    out.witness_note = out.passed
                           ? (inner.witness_note.empty() ? "violation reproduced"
                                                         : "violation reproduced; " +
                                                               inner.witness_note)
                           : "expected a violation but none was found";
    return out;
}

} // namespace pglab
