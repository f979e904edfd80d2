#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "pglab/errors.hpp"
#include "pglab/grid.hpp"
#include "pglab/outcome.hpp"
#include "pglab/specfun.hpp"

namespace pglab {

enum class CMDirection { direct, reversed };

// Finite-order complete-monotonicity scan of F(x) = psi(x) - ln x + alpha/x.
// direct requires (-1)^n F^(n)(x) >= 0 for every n = 0..max_order over the
// grid; reversed applies the same test to -F, i.e. to ln x - alpha/x - psi(x).
// The derivatives are closed-form:
//   n = 0:   q_0 = psi(x) - ln x + alpha/x,
//   n >= 1:  q_n = (-1)^n psi^(n)(x) + (n-1)!/x^n + alpha n!/x^{n+1},
// so no numerical differentiation enters.  The witness is the first violating
// (order, x) pair when the scan fails, otherwise the abscissa of the minimum
// slack; margin is the minimum signed q over all orders and points.
inline CheckOutcome cm_check(double alpha, int max_order, const Grid& grid,
                             CMDirection direction, double noise_tol = 1e-12,
                             const EvalOptions& opt = {},
                             std::string claim_id = "cm_check") {
    if (max_order < 0 || max_order > 12)
        throw DomainError("cm_check: max_order must be in [0, 12]");
    if (!std::isfinite(alpha)) throw DomainError("cm_check: alpha must be finite");
    const auto xs = grid.points();
    CheckOutcome out;
    out.claim_id = std::move(claim_id);
    out.samples = xs.size() * static_cast<std::size_t>(max_order + 1);
    double min_q = std::numeric_limits<double>::infinity();
    std::optional<double> min_x;
    int min_n = 0;
    bool violated = false;
    double viol_x = 0.0;
    int viol_n = 0;
    for (int n = 0; n <= max_order; ++n) {
        for (const double x : xs) {
            if (!(x > 0.0))
                throw DomainError("cm_check: grid must stay inside (0, inf)");
            double q;
            double scale;
            try {
                if (n == 0) {
                    const double ps = digamma(x, opt).value;
                    const double lg = std::log(x);
                    const double ax = alpha / x;
                    q = ps - lg + ax;
                    scale = std::abs(ps) + std::abs(lg) + std::abs(ax);
                } else {
                    const double pg = psi_n(n, x, opt).value;
                    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;   // (-1)^n
                    const double t2 = factorial(n - 1) * std::pow(x, -static_cast<double>(n));
                    const double t3 =
                        alpha * factorial(n) * std::pow(x, -static_cast<double>(n + 1));
                    q = sgn * pg + t2 + t3;
                    scale = std::abs(pg) + t2 + std::abs(t3);
                }
            } catch (const EvalError&) {
                throw;
            } catch (const std::exception& e) {
                throw EvalError(x, e.what());
            }
            if (direction == CMDirection::reversed) q = -q;
            if (q < min_q) {
                min_q = q;
                min_x = x;
                min_n = n;
            }
            if (q <= -noise_tol * std::max(1.0, scale) && !violated) {
                violated = true;
                viol_x = x;
                viol_n = n;
            }
        }
    }
    out.passed = !violated;
    out.margin = std::isfinite(min_q) ? min_q : 0.0;
    if (violated) {
        out.witness_x = viol_x;
        out.witness_note = "order n = " + std::to_string(viol_n);
    } else {
        out.witness_x = min_x;
        out.witness_note = "minimum slack at order n = " + std::to_string(min_n);
    }
    return out;
}

} // namespace pglab
