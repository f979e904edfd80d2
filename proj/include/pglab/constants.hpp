#pragma once

#include <numbers>

namespace pglab {

struct Constants {
    static constexpr double pi          = std::numbers::pi;
    static constexpr double euler_gamma = std::numbers::egamma;
    // pi_sq_over_6 is derived from pi_sq_over_2 so their ratio is exact by
    // construction.
    static constexpr double pi_sq_over_2 = pi * pi / 2.0;
    static constexpr double pi_sq_over_6 = pi_sq_over_2 / 3.0;
};

} // namespace pglab
