#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "pglab/binet.hpp"
#include "pglab/constants.hpp"
#include "pglab/errors.hpp"
#include "pglab/grid.hpp"
#include "pglab/specfun.hpp"

#include "golden.hpp"

using namespace pglab;

TEST_CASE("digamma matches frozen references") {
    REQUIRE(std::abs(digamma(1.0).value + golden::kEulerGamma) <= 1e-12);
    REQUIRE(std::abs(digamma(2.0).value - golden::kPsiTwo) <= 1e-12);
    REQUIRE(std::abs(digamma(3.0).value - golden::kPsiThree) <= 1e-12);
    REQUIRE(std::abs(digamma(0.5).value - golden::kPsiHalf) <= 1e-12);
    REQUIRE(std::abs(digamma(0.1).value - golden::kPsiTenth) <= 1e-12);
    REQUIRE(std::abs(digamma(-0.5).value - golden::kPsiMinusHalf) <= 1e-12);
}

TEST_CASE("zeta(2) reference survives a brute-force bracket") {
    // sum_{n>N} 1/n^2 lies strictly between 1/(N+1) and 1/N, so the partial
    // sum plus either tail bound brackets pi^2/6.  This pins the frozen
    // constant with nothing but grade-school arithmetic.
    const std::size_t n_terms = 1'000'000;
    detail::KahanSum s;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        const double nd = static_cast<double>(n);
        s.add(1.0 / (nd * nd));
    }
    const double nd = static_cast<double>(n_terms);
    REQUIRE(s.sum + 1.0 / (nd + 1.0) < golden::kZeta2);
    REQUIRE(golden::kZeta2 < s.sum + 1.0 / nd);
}

TEST_CASE("polygamma matches frozen references") {
    REQUIRE(std::abs(polygamma(1, 1.0).value - golden::kZeta2) <= 1e-12);
    REQUIRE(std::abs(polygamma(1, 2.0).value - golden::kTrigammaTwo) <= 1e-12);
    REQUIRE(std::abs(polygamma(1, 0.5).value - golden::kPiSqOver2) <= 1e-11);
    REQUIRE(std::abs(polygamma(1, 1.5).value - golden::kTrigammaThreeHalves) <= 1e-12);
    REQUIRE(std::abs(polygamma(1, -0.5).value - golden::kTrigammaMinusHalf) <= 1e-11);
    REQUIRE(std::abs(polygamma(2, 1.0).value + golden::kTwoZeta3) <= 1e-12);
    REQUIRE(std::abs(polygamma(2, 0.5).value - golden::kTetragammaHalf) <= 1e-11);
    REQUIRE(std::abs(polygamma(3, 1.0).value - golden::kSixZeta4) <= 1e-11);
    REQUIRE(std::abs(polygamma(4, 1.0).value - golden::kMinus24Zeta5) <= 1e-11);
}

TEST_CASE("psi_n dispatches to the right evaluator") {
    REQUIRE(psi_n(0, 2.5).value == digamma(2.5).value);
    REQUIRE(psi_n(2, 3.0).value == polygamma(2, 3.0).value);
}

TEST_CASE("recurrence_shift worked examples") {
    REQUIRE(recurrence_shift(0, 1.0, 1) == 1.0);
    REQUIRE(recurrence_shift(1, 1.0, 1) == -1.0);
    REQUIRE(std::abs(recurrence_shift(0, 0.5, 2) - 8.0 / 3.0) <= 1e-15);
    // Negative start that never lands on a pole.
    REQUIRE(std::abs(recurrence_shift(0, -0.5, 3) - (-2.0 + 2.0 + 2.0 / 3.0)) <= 1e-15);
    REQUIRE_THROWS_AS(recurrence_shift(0, 0.0, 1), PoleError);
    REQUIRE_THROWS_AS(recurrence_shift(0, -2.0, 1), PoleError);
    REQUIRE_THROWS_AS(recurrence_shift(1, -1.0, 2), PoleError);
    REQUIRE_THROWS_AS(recurrence_shift(-1, 1.0, 1), DomainError);
    REQUIRE_THROWS_AS(recurrence_shift(0, 1.0, 0), DomainError);
}

TEST_CASE("one-step recurrence holds across the shift seam") {
    const auto xs = Grid::log_grid(1e-2, 20.0, 100).points();
    for (int n = 0; n <= 3; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        for (const double x : xs) {
            const double base = psi_n(n, x).value;
            const double stepped = psi_n(n, x + 1.0).value;
            const double jump = sgn * factorial(n) * std::pow(x, -(double)(n + 1));
            REQUIRE(std::abs(stepped - (base + jump)) <= 1e-11 * (1.0 + std::abs(base)));
        }
    }
}

TEST_CASE("derivative signs alternate for positive arguments") {
    std::mt19937 rng(20260822u);
    std::uniform_real_distribution<double> ex(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double x = std::pow(10.0, ex(rng));
        for (int n = 1; n <= 6; ++n) {
            const double sgn = (n % 2 == 1) ? 1.0 : -1.0;
            REQUIRE(sgn * polygamma(n, x).value > 0.0);
        }
    }
}

TEST_CASE("closed-form envelope brackets the derivative magnitudes strictly") {
    const auto xs = Grid::log_grid(0.1, 100.0, 60).points();
    for (int k = 1; k <= 6; ++k) {
        const double sgn = (k % 2 == 1) ? 1.0 : -1.0;
        for (const double x : xs) {
            const auto [lo, hi] = polygamma_bounds(k, x);
            const double v = sgn * polygamma(k, x).value;
            REQUIRE(lo < v);
            REQUIRE(v < hi);
        }
    }
}

TEST_CASE("envelope is exact arithmetic at k = 1, x = 1") {
    const auto [lo, hi] = polygamma_bounds(1, 1.0);
    REQUIRE(lo == 1.5);
    REQUIRE(hi == 2.0);
}

TEST_CASE("central difference agrees with the first derivative") {
    const double step = 1e-5;
    for (const double x : Grid::log_grid(0.5, 20.0, 40).points()) {
        const double fd = (digamma(x + step).value - digamma(x - step).value) / (2.0 * step);
        const double direct = polygamma(1, x).value;
        REQUIRE(std::abs(fd - direct) <= 1e-5 * std::abs(direct));
    }
}

TEST_CASE("argument validation") {
    REQUIRE_THROWS_AS(digamma(0.0), PoleError);
    REQUIRE_THROWS_AS(digamma(-1.0), PoleError);
    REQUIRE_THROWS_AS(digamma(-1.5), DomainError);
    REQUIRE_THROWS_AS(digamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
    REQUIRE_THROWS_AS(digamma(std::numeric_limits<double>::infinity()), DomainError);
    REQUIRE_THROWS_AS(polygamma(0, 1.0), DomainError);
    REQUIRE_THROWS_AS(polygamma(21, 1.0), DomainError);
    REQUIRE_THROWS_AS(polygamma(1, -1.0), PoleError);
    REQUIRE_THROWS_AS(polygamma(1, -2.5), DomainError);
    REQUIRE_THROWS_AS(polygamma_bounds(0, 1.0), DomainError);
    REQUIRE_THROWS_AS(polygamma_bounds(1, 0.0), DomainError);
    REQUIRE_THROWS_AS(factorial(-1), DomainError);
    REQUIRE_THROWS_AS(factorial(21), DomainError);
    REQUIRE(factorial(5) == 120.0);
}

TEST_CASE("truncation failure raises instead of returning garbage") {
    EvalOptions tight;
    tight.shift_threshold = 1.0;
    tight.max_terms = 40;
    REQUIRE_THROWS_AS(digamma(5.0, tight), ConvergenceError);
    EvalOptions tighter;
    tighter.shift_threshold = 1.0;
    tighter.max_terms = 10;
    REQUIRE_THROWS_AS(polygamma(1, 5.0, tighter), ConvergenceError);
}

TEST_CASE("error estimates are positive, finite, and honest at the anchors") {
    const EvalResult r1 = digamma(1.0);
    REQUIRE(r1.est_error > 0.0);
    REQUIRE(r1.est_error < 1e-12);
    REQUIRE(std::abs(r1.value + golden::kEulerGamma) <= r1.est_error + 5e-16);

    const EvalResult r2 = digamma(0.5);
    REQUIRE(std::abs(r2.value - golden::kPsiHalf) <= r2.est_error + 5e-16);

    const EvalResult r3 = polygamma(1, 0.5);
    REQUIRE(std::abs(r3.value - golden::kPiSqOver2) <= r3.est_error + 5e-16);

    const EvalResult r4 = polygamma(2, 1.0);
    REQUIRE(std::abs(r4.value + golden::kTwoZeta3) <= r4.est_error + 5e-16);

    // A deep pole shift is charged to the estimate: the reciprocal at 1e-8
    // costs ~1e8 * eps of absolute accuracy and the estimate must say so.
    const EvalResult rp = digamma(1e-8);
    REQUIRE(std::abs(rp.value + 1e8 + golden::kEulerGamma) <= 1e-6);
    REQUIRE(rp.est_error > 1e-9);
    REQUIRE(rp.est_error < 1e-5);
}

TEST_CASE("property: random one-step recurrence residuals stay small") {
    std::mt19937 rng(20260822u);
    std::uniform_real_distribution<double> ex(std::log(0.05), std::log(20.0));
    std::uniform_int_distribution<int> order(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = std::exp(ex(rng));
        const int n = order(rng);
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        const double base = psi_n(n, x).value;
        const double stepped = psi_n(n, x + 1.0).value;
        const double jump = sgn * factorial(n) * std::pow(x, -(double)(n + 1));
        REQUIRE(std::abs(stepped - (base + jump)) <= 1e-11 * (1.0 + std::abs(base)));
    }
}

TEST_CASE("property: digamma strictly increases on the positive axis") {
    std::mt19937 rng(20260823u);
    std::uniform_real_distribution<double> pick(0.01, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        double a = pick(rng);
        double b = pick(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-3) b += 1e-3;
        REQUIRE(digamma(a).value < digamma(b).value);
    }
}

TEST_CASE("integral route agrees with the series route") {
    for (const double x : Grid::log_grid(0.5, 50.0, 200).points()) {
        REQUIRE(std::abs(binet_oracle(x) - digamma(x).value) <= 1e-9);
    }
    REQUIRE(std::abs(binet_oracle(1.0) + golden::kEulerGamma) <= 1e-10);
    REQUIRE(std::abs(binet_oracle(3.0) - golden::kPsiThree) <= 1e-10);
}

TEST_CASE("integrand is continuous across its series seam") {
    for (const double x : {0.5, 1.0, 10.0}) {
        const double below = detail::binet_integrand(1e-4 * (1.0 - 1e-12), x);
        const double above = detail::binet_integrand(1e-4 * (1.0 + 1e-12), x);
        REQUIRE(std::abs(below - above) <= 1e-10);
    }
}

TEST_CASE("integral route rejects the nonpositive axis") {
    REQUIRE_THROWS_AS(binet_oracle(0.0), DomainError);
    REQUIRE_THROWS_AS(binet_oracle(-1.0), DomainError);
    REQUIRE_THROWS_AS(binet_oracle(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("shared constants are internally consistent") {
    REQUIRE(Constants::pi_sq_over_6 == Constants::pi_sq_over_2 / 3.0);
    REQUIRE(std::abs(Constants::euler_gamma - golden::kEulerGamma) <= 1e-15);
    REQUIRE(std::abs(Constants::pi_sq_over_6 - golden::kZeta2) <= 1e-15);
    REQUIRE(std::abs(Constants::pi_sq_over_2 - golden::kPiSqOver2) <= 1e-15);
}
