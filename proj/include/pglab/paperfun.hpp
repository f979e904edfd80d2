#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include "pglab/constants.hpp"
#include "pglab/errors.hpp"
#include "pglab/specfun.hpp"

namespace pglab {

struct ThetaParam {
    double theta = 1.0;
};

namespace detail {

// ln(e^t - 1), stable across magnitudes: for large t the direct form would
// overflow, for small t it would cancel.
inline double log_expm1(double t) {
    return t >= 1.0 ? t + std::log1p(-std::exp(-t)) : std::log(std::expm1(t));
}

inline void require_theta(const ThetaParam& p, const char* fn) {
    if (!(p.theta > 0.0) || !std::isfinite(p.theta))
        throw DomainError(std::string(fn) + ": theta must be positive and finite");
}

inline void require_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(fn) + ": requires finite x > 0");
}

} // namespace detail

// phi_theta(x) = psi(x) + ln(e^{theta/x} - 1) on x > 0.
inline double phi_theta(double x, const ThetaParam& p, const EvalOptions& opt = {}) {
    detail::require_theta(p, "phi_theta");
    detail::require_positive(x, "phi_theta");
    return digamma(x, opt).value + detail::log_expm1(p.theta / x);
}

// The theta = 1 member; delegates so the two agree bit for bit.
inline double phi(double x, const EvalOptions& opt = {}) {
    return phi_theta(x, ThetaParam{1.0}, opt);
}

// varphi(theta, x) = theta e^{theta/x} / (x^2 (e^{theta/x} - 1)), written with
// w = e^{-theta/x} so that large theta/x cannot overflow:
//   varphi = (theta/x^2) / (1 - w).
inline double varphi(double theta, double x) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw DomainError("varphi: theta must be positive and finite");
    detail::require_positive(x, "varphi");
    const double u = theta / x;
    return (theta / (x * x)) / (-std::expm1(-u));
}

// d/dx varphi(theta, x) in the same variables:
//   varphi_dx = -(theta/x^4) (2x(1-w) - theta w) / (1-w)^2,  w = e^{-theta/x};
// negative for all theta, x > 0.
inline double varphi_dx(double theta, double x) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw DomainError("varphi_dx: theta must be positive and finite");
    detail::require_positive(x, "varphi_dx");
    const double u = theta / x;
    const double w = std::exp(-u);
    const double d = -std::expm1(-u);   // 1 - w
    return -(theta / (x * x * x * x)) * (2.0 * x * d - theta * w) / (d * d);
}

// First derivative of phi_theta: psi'(x) - varphi(theta, x).
inline double phi_theta_d1(double x, const ThetaParam& p, const EvalOptions& opt = {}) {
    detail::require_theta(p, "phi_theta_d1");
    detail::require_positive(x, "phi_theta_d1");
    return polygamma(1, x, opt).value - varphi(p.theta, x);
}

// Second derivative of phi_theta: psi''(x) - d/dx varphi(theta, x).
inline double phi_theta_d2(double x, const ThetaParam& p, const EvalOptions& opt = {}) {
    detail::require_theta(p, "phi_theta_d2");
    detail::require_positive(x, "phi_theta_d2");
    return polygamma(2, x, opt).value - varphi_dx(p.theta, x);
}

// delta(u) = u(e^u - 1) / (1 + (u-1)e^u); multiplying through by e^{-u} gives
//   u(1 - e^{-u}) / (u + e^{-u} - 1),
// and below u = 1e-3 numerator and denominator are replaced by their Taylor
// polynomials (each is u^2 times the bracketed series).  Decreases from 2 to 1.
inline double delta_fn(double u) {
    detail::require_positive(u, "delta_fn");
    if (u < 1e-3) {
        const double u2 = u * u;
        const double num = 1.0 - u / 2.0 + u2 / 6.0 - u * u2 / 24.0 + u2 * u2 / 120.0;
        const double den =
            0.5 - u / 6.0 + u2 / 24.0 - u * u2 / 120.0 + u2 * u2 / 720.0;
        return num / den;
    }
    return u * (-std::expm1(-u)) / (u + std::expm1(-u));
}

// rho(u) = (A(u) - 1)/u with A = 2u e^u (e^u - 1 - u/2)/(e^u - 1)^2, again with
// e^{-u} factored out:
//   A = 2u (1 - w - (u/2) w) / (1 - w)^2,  w = e^{-u};
// below u = 1e-3 the quotient is replaced by 1 + u/4 - u^3/144.  Increases
// from 1 to 2.
inline double rho_fn(double u) {
    detail::require_positive(u, "rho_fn");
    if (u < 1e-3) return 1.0 + u / 4.0 - u * u * u / 144.0;
    const double w = std::exp(-u);
    const double d = -std::expm1(-u);   // 1 - w
    const double a = 2.0 * u * (d - (u / 2.0) * w) / (d * d);
    return (a - 1.0) / u;
}

// 3 + 2x - 2 e^{1/(x+1)} - (2x+1) e^{1/(x+1) + 1/x}: stays below -4 on (0, inf),
// diverging to -inf at 0+ and increasing to -4 (like -4 - 2/x) at infinity.
inline double aux_h(double x) {
    detail::require_positive(x, "aux_h");
    const double a = 1.0 / (x + 1.0);
    return 3.0 + 2.0 * x - 2.0 * std::exp(a) - (2.0 * x + 1.0) * std::exp(a + 1.0 / x);
}

// x^2 (e^{1/x} - 1) - (x+1)^2 (1 - e^{-1/(x+1)}), positive on (0, inf).  Below
// roughly x = 1.4e-3 the first product overflows to +inf, which still compares
// correctly against a positivity claim.
inline double equiv_ineq_gap(double x) {
    detail::require_positive(x, "equiv_ineq_gap");
    return x * x * std::expm1(1.0 / x) -
           (x + 1.0) * (x + 1.0) * (-std::expm1(-1.0 / (x + 1.0)));
}

// f(x) = psi(x+1) - x psi'(1 + x/2) on (-1, inf); increasing, f(0) = -gamma.
inline double f(double x, const EvalOptions& opt = {}) {
    if (!(x > -1.0) || !std::isfinite(x))
        throw DomainError("f: requires finite x > -1");
    if (std::abs(x) < 1e-12) return -Constants::euler_gamma;
    return digamma(x + 1.0, opt).value - x * polygamma(1, 1.0 + x / 2.0, opt).value;
}

// g(x) = x psi'(sqrt(x+1)) - psi(x+1) on (-1, inf); increasing, g(0) = gamma.
inline double g(double x, const EvalOptions& opt = {}) {
    if (!(x > -1.0) || !std::isfinite(x))
        throw DomainError("g: requires finite x > -1");
    if (std::abs(x) < 1e-12) return Constants::euler_gamma;
    return x * polygamma(1, std::sqrt(x + 1.0), opt).value - digamma(x + 1.0, opt).value;
}

// h(x) = (x^2 - 1) psi'(x) - psi(x^2), continued by 1 + gamma - pi^2/6 at x = 0.
// Evaluated through the one-step recurrence identity
//   h(x) = 1 + (x^2 - 1) psi'(1 + x) - psi(1 + x^2),
// which is exact on (-1,0) u (0,inf), reaches the (-1,0) branch without
// negative arguments, and avoids the 1/x^2 - 1/x^2 cancellation near 0 that
// makes the raw form lose all digits there.  h(1) = gamma.
inline double h(double x, const EvalOptions& opt = {}) {
    if (!(x > -1.0) || !std::isfinite(x))
        throw DomainError("h: requires finite x > -1");
    if (std::abs(x) < 1e-12)
        return 1.0 + Constants::euler_gamma - Constants::pi_sq_over_6;
    return 1.0 + (x * x - 1.0) * polygamma(1, 1.0 + x, opt).value -
           digamma(1.0 + x * x, opt).value;
}

struct SeriesIdentityPair {
    double direct;
    double series;
};

// Two routes to (u^2 - 1) psi'(u) - psi(u^2): the closed form, and
//   gamma + sum_{i>=1} i (u^2-1)(u-1)^2 / ((i+1)(u+i)^2(u^2+i)).
// The sum stops once a term drops below 1e-14 of the accumulated value and is
// finished with the integral estimate of the remaining tail,
//   C [1/(2M^2) - (1+u)^2/(3M^3)],  C = (u^2-1)(u-1)^2,  M = last index + 1/2,
// which matches the term expansion C [i^-3 - (1+u)^2 i^-4 + ...].
inline SeriesIdentityPair series_identity(double u, std::size_t terms = 10'000'000,
                                          const EvalOptions& opt = {}) {
    detail::require_positive(u, "series_identity");
    const double direct =
        (u * u - 1.0) * polygamma(1, u, opt).value - digamma(u * u, opt).value;
    const double c = (u * u - 1.0) * (u - 1.0) * (u - 1.0);
    detail::KahanSum acc;
    std::size_t i = 0;
    if (c != 0.0) {
        while (i < terms) {
            ++i;
            const double id = static_cast<double>(i);
            const double term =
                c * id / ((id + 1.0) * (u + id) * (u + id) * (u * u + id));
            acc.add(term);
            if (std::abs(term) < 1e-14 * std::abs(acc.sum) + 1e-300) break;
        }
    }
    double tail = 0.0;
    if (i > 0) {
        const double m = static_cast<double>(i) + 0.5;
        tail = c * (1.0 / (2.0 * m * m) - (1.0 + u) * (1.0 + u) / (3.0 * m * m * m));
    }
    return {direct, Constants::euler_gamma + acc.sum + tail};
}

// mu(k, x) = sqrt(k(k+x)) - k, computed as x / (1 + sqrt(1 + x/k)) so that
// large k does not cancel; increases in k toward the limit x/2.
inline double mu(std::int64_t k, double x) {
    if (k < 1) throw DomainError("mu: requires k >= 1");
    if (!(x > -1.0) || !std::isfinite(x)) throw DomainError("mu: requires finite x > -1");
    return x / (1.0 + std::sqrt(1.0 + x / static_cast<double>(k)));
}

struct SandwichBounds {
    double lower;
    double mid;
    double upper;
};

// lower = -gamma + x psi'(1 + x/2), mid = psi(x+1), upper = -gamma + x psi'(sqrt(x+1)).
// lower < mid < upper on (0, inf); the ordering reverses on (-1, 0).
inline SandwichBounds sandwich_bounds(double x, const EvalOptions& opt = {}) {
    if (!(x > -1.0) || x == 0.0 || !std::isfinite(x))
        throw DomainError("sandwich_bounds: requires x in (-1,0) or (0,inf)");
    const double lower =
        -Constants::euler_gamma + x * polygamma(1, 1.0 + x / 2.0, opt).value;
    const double mid = digamma(x + 1.0, opt).value;
    const double upper =
        -Constants::euler_gamma + x * polygamma(1, std::sqrt(x + 1.0), opt).value;
    return {lower, mid, upper};
}

// Higher-order analogue of f: f_i(x) = psi^(i)(x+1) - x psi^(i+1)(1 + x/2).
inline double f_i(double x, int i, const EvalOptions& opt = {}) {
    if (i < 1) throw DomainError("f_i: requires i >= 1");
    if (!(x > -1.0) || !std::isfinite(x))
        throw DomainError("f_i: requires finite x > -1");
    return psi_n(i, x + 1.0, opt).value - x * psi_n(i + 1, 1.0 + x / 2.0, opt).value;
}

// Higher-order analogue of g: g_i(x) = psi^(i)(x+1) - x psi^(i+1)(sqrt(x+1)).
inline double g_i(double x, int i, const EvalOptions& opt = {}) {
    if (i < 1) throw DomainError("g_i: requires i >= 1");
    if (!(x > -1.0) || !std::isfinite(x))
        throw DomainError("g_i: requires finite x > -1");
    return psi_n(i, x + 1.0, opt).value -
           x * psi_n(i + 1, std::sqrt(x + 1.0), opt).value;
}

// Parameters of the generalized difference
//   psi^(i-1)(x + alpha) - (x + beta)^k psi^(i)(lambda (x + delta)^mu + tau).
// alpha, lambda, mu must be strictly positive (they keep the polygamma
// arguments positive); beta, delta, tau may sit at 0, which the named
// reductions below use.
struct OpenProblemParams {
    int i = 1;
    int k = 1;
    double alpha = 1.0;
    double beta = 0.0;
    double delta = 1.0;
    double lambda = 1.0;
    double mu = 0.5;
    double tau = 0.0;
};

inline void validate(const OpenProblemParams& p) {
    if (p.i < 1 || p.k < 1)
        throw DomainError("open_problem_fn: i and k must be integers >= 1");
    if (!(p.alpha > 0.0) || !(p.lambda > 0.0) || !(p.mu > 0.0))
        throw DomainError("open_problem_fn: alpha, lambda, mu must be positive");
    if (p.beta < 0.0 || p.delta < 0.0 || p.tau < 0.0)
        throw DomainError("open_problem_fn: beta, delta, tau must be non-negative");
    for (double v : {p.alpha, p.beta, p.delta, p.lambda, p.mu, p.tau})
        if (!std::isfinite(v))
            throw DomainError("open_problem_fn: parameters must be finite");
}

// The defaults reduce to -g; (i=1, k=1, alpha=1, beta=0, delta=0, lambda=1/2,
// mu=1, tau=1) reduces to f.
inline double open_problem_fn(double x, const OpenProblemParams& p,
                              const EvalOptions& opt = {}) {
    validate(p);
    if (!std::isfinite(x))
        throw DomainError("open_problem_fn: x must be finite");
    // x + delta may go negative when mu is integral (the f reduction has
    // delta = 0, mu = 1); a fractional power of a negative base comes back
    // NaN and is rejected here along with nonpositive inner arguments.
    const double inner = p.lambda * std::pow(x + p.delta, p.mu) + p.tau;
    if (!std::isfinite(inner) || !(inner > 0.0))
        throw DomainError("open_problem_fn: inner argument must be positive");
    return psi_n(p.i - 1, x + p.alpha, opt).value -
           std::pow(x + p.beta, static_cast<double>(p.k)) *
               psi_n(p.i, inner, opt).value;
}

} // namespace pglab
