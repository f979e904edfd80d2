#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "pglab/constants.hpp"
#include "pglab/errors.hpp"

namespace pglab {

// Accuracy and truncation policy for the series evaluators.
struct EvalOptions {
    double target_abs_tol = 1e-13;   // acceptable absolute error in the result
    double shift_threshold = 10.0;   // arguments below this are recurrence-shifted up
    std::size_t max_terms = 10'000'000;
};

// Value plus an a-posteriori absolute error bound.
struct EvalResult {
    double value = 0.0;
    double est_error = 0.0;
};

namespace detail {

inline constexpr std::array<double, 21> kFactorial = {
    1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0,
    3628800.0, 39916800.0, 479001600.0, 6227020800.0, 87178291200.0,
    1307674368000.0, 20922789888000.0, 355687428096000.0,
    6402373705728000.0, 121645100408832000.0, 2432902008176640000.0};

// Compensated accumulator.  The series below add up to a few million terms,
// and a plain running sum would lose more than the tolerance asks for.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double term) {
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

inline void require_valid_argument(double x, const char* fn) {
    if (!std::isfinite(x))
        throw DomainError(std::string(fn) + ": argument must be finite");
    if (x <= 0.0 && x == std::floor(x))
        throw PoleError(std::string(fn) + ": pole at x = " + std::to_string(x));
    if (x < -1.0)
        throw DomainError(std::string(fn) + ": arguments below -1 are not supported");
}

// Effective stopping tolerance: never looser than the requested absolute
// tolerance, but tightened toward the rounding floor of the running
// magnitude so that small results (e.g. psi'' at large x) keep relative
// accuracy instead of stopping at a fixed absolute level.
inline double effective_tol(double target_abs_tol, double magnitude) {
    const double eps = std::numeric_limits<double>::epsilon();
    return std::min(target_abs_tol, std::max(4.0 * eps * magnitude, 1e-22));
}

} // namespace detail

inline double factorial(int n) {
    if (n < 0 || n >= static_cast<int>(detail::kFactorial.size()))
        throw DomainError("factorial: n out of table range [0, 20]");
    return detail::kFactorial[static_cast<std::size_t>(n)];
}

// Accumulated correction of the ascending recurrence,
//   psi^(n)(x) = psi^(n)(x + steps) - sum_{j=0}^{steps-1} (-1)^n n! / (x+j)^{n+1};
// returns that sum.  Examples: (0, 1, 1) -> 1; (1, 1, 1) -> -1; (0, 0.5, 2) -> 8/3.
inline double recurrence_shift(int n, double x, std::size_t steps) {
    if (n < 0) throw DomainError("recurrence_shift: order must be >= 0");
    if (steps == 0) throw DomainError("recurrence_shift: steps must be >= 1");
    if (!std::isfinite(x)) throw DomainError("recurrence_shift: argument must be finite");
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;   // (-1)^n
    const double fact = factorial(n);
    detail::KahanSum acc;
    for (std::size_t j = 0; j < steps; ++j) {
        const double w = x + static_cast<double>(j);
        if (w <= 0.0 && w == std::floor(w))
            throw PoleError("recurrence_shift: shifted argument hits a pole at x = " +
                            std::to_string(w));
        acc.add(sign * fact / std::pow(w, static_cast<double>(n + 1)));
    }
    return acc.sum;
}

// Digamma through the series psi(1+z) = -gamma + sum_{n>=1} z/(n(n+z)), after
// shifting the argument above shift_threshold.  The truncated tail is replaced
// by its midpoint integral estimate
//   sum_{n>N} [1/n - 1/(n+z)]  ~  log1p(z/M) + (1/(M+z)^2 - 1/M^2)/24,
// with M = N + 1/2; the estimate itself is good to (7/5760) * 6 / M^4.
// Arguments in (-1, 0) ride through the same shift loop (the first reciprocal
// is just negative).  Nonpositive integers raise PoleError, x < -1 DomainError.
inline EvalResult digamma(double x, const EvalOptions& opt = {}) {
    detail::require_valid_argument(x, "digamma");
    const double eps = std::numeric_limits<double>::epsilon();

    detail::KahanSum shift;       // reciprocals subtracted by the recurrence
    double shift_mag = 0.0;
    double w = x;
    while (w < opt.shift_threshold) {
        const double r = 1.0 / w;
        shift.add(r);
        shift_mag += std::abs(r);
        w += 1.0;
    }

    const double z = w - 1.0;
    detail::KahanSum s;
    double residual = std::numeric_limits<double>::infinity();
    std::size_t n = 0;
    while (n < opt.max_terms) {
        ++n;
        const double nd = static_cast<double>(n);
        s.add(z / (nd * (nd + z)));
        if (n < 8 || n % 8 == 0 || n == opt.max_terms) {
            const double m = nd + 0.5;
            residual = (7.0 / 5760.0) * 6.0 / (m * m * m * m);
            const double scale = Constants::euler_gamma + std::abs(s.sum) + shift_mag;
            if (residual <= detail::effective_tol(opt.target_abs_tol, scale)) break;
        }
    }
    if (residual > opt.target_abs_tol)
        throw ConvergenceError("digamma: tolerance not reached within max_terms");

    const double m = static_cast<double>(n) + 0.5;
    const double tail =
        std::log1p(z / m) + (1.0 / ((m + z) * (m + z)) - 1.0 / (m * m)) / 24.0;
    const double value = -Constants::euler_gamma + s.sum + tail - shift.sum;
    const double mag =
        Constants::euler_gamma + std::abs(s.sum) + std::abs(tail) + shift_mag;
    return {value, 2.0 * (residual + eps * mag)};
}

// psi^(n), n >= 1, through psi^(n)(w) = (-1)^{n+1} n! sum_{k>=0} (w+k)^{-(n+1)}
// with the same upward shift.  Midpoint tail estimate
//   sum_{k>=N} (w+k)^{-(n+1)}  ~  M^{-n}/n - (n+1) M^{-(n+2)}/24,
// M = w + N - 1/2, good to (7/5760)(n+1)(n+2)(n+3) M^{-(n+4)}.
// Sign invariant for x > 0: (-1)^{n+1} psi^(n)(x) > 0.
inline EvalResult polygamma(int n, double x, const EvalOptions& opt = {}) {
    if (n < 1 || n > 20)
        throw DomainError("polygamma: order must be in [1, 20]");
    detail::require_valid_argument(x, "polygamma");
    const double eps = std::numeric_limits<double>::epsilon();
    const double fact = factorial(n);
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;   // (-1)^{n+1}
    const double p = static_cast<double>(n + 1);

    detail::KahanSum shift;       // (-1)^n n!/(x+j)^{n+1} terms subtracted below
    double shift_mag = 0.0;
    double w = x;
    while (w < opt.shift_threshold) {
        const double term = -sign * fact * std::pow(w, -p);
        shift.add(term);
        shift_mag += std::abs(term);
        w += 1.0;
    }

    detail::KahanSum s;           // sum of (w+k)^{-(n+1)}, all positive
    double residual = std::numeric_limits<double>::infinity();
    std::size_t k = 0;
    while (k < opt.max_terms) {
        const double base = w + static_cast<double>(k);
        s.add(std::pow(base, -p));
        ++k;
        if (k < 8 || k % 8 == 0 || k == opt.max_terms) {
            const double m = w + static_cast<double>(k) - 0.5;
            residual = fact * (7.0 / 5760.0) * p * (p + 1.0) * (p + 2.0) *
                       std::pow(m, -(p + 3.0));
            const double scale = fact * s.sum + shift_mag;
            if (residual <= detail::effective_tol(opt.target_abs_tol, scale)) break;
        }
    }
    if (residual > opt.target_abs_tol)
        throw ConvergenceError("polygamma: tolerance not reached within max_terms");

    const double m = w + static_cast<double>(k) - 0.5;
    const double tail = std::pow(m, -static_cast<double>(n)) / static_cast<double>(n) -
                        p * std::pow(m, -(p + 1.0)) / 24.0;
    const double value = sign * fact * (s.sum + tail) - shift.sum;
    const double mag = fact * (s.sum + std::abs(tail)) + shift_mag;
    return {value, 2.0 * (residual + eps * mag)};
}

// Unified accessor: order 0 is psi itself, order n >= 1 its n-th derivative.
inline EvalResult psi_n(int n, double x, const EvalOptions& opt = {}) {
    return n == 0 ? digamma(x, opt) : polygamma(n, x, opt);
}

// Two-sided envelope for (-1)^{k+1} psi^(k)(x) on x > 0:
//   (k-1)!/x^k + k!/(2 x^{k+1})  <  (-1)^{k+1} psi^(k)(x)  <  (k-1)!/x^k + k!/x^{k+1}.
// Returns (lower, upper).
inline std::pair<double, double> polygamma_bounds(int k, double x) {
    if (k < 1 || k > 20)
        throw DomainError("polygamma_bounds: order must be in [1, 20]");
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("polygamma_bounds: requires finite x > 0");
    const double common = factorial(k - 1) * std::pow(x, -static_cast<double>(k));
    const double top = factorial(k) * std::pow(x, -static_cast<double>(k + 1));
    return {common + 0.5 * top, common + top};
}

} // namespace pglab
