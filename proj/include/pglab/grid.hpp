#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pglab/errors.hpp"

namespace pglab {

// Evaluation grid. `offset` shifts every generated point, which lets a
// logarithmic grid cover an interval hanging off a left endpoint such as -1:
// Grid with lo=1e-6, hi=101, offset=-1 covers (-1+1e-6, 100].
struct Grid {
    enum class Spacing { linear, logarithmic };

    double lo = 0.0;
    double hi = 1.0;
    std::size_t count = 2;
    Spacing spacing = Spacing::linear;
    double offset = 0.0;

    static Grid linear_grid(double lo, double hi, std::size_t count) {
        return Grid{lo, hi, count, Spacing::linear, 0.0};
    }

    static Grid log_grid(double lo, double hi, std::size_t count) {
        return Grid{lo, hi, count, Spacing::logarithmic, 0.0};
    }

    static Grid offset_log_grid(double lo, double hi, std::size_t count,
                                double offset) {
        return Grid{lo, hi, count, Spacing::logarithmic, offset};
    }

    // Monotone increasing points; endpoints are reproduced exactly (plus
    // offset) rather than through exp(log .) round-trips.
    std::vector<double> points() const {
        if (count < 2)
            throw DomainError("grid needs at least two points");
        if (!(lo < hi))
            throw DomainError("grid requires lo < hi");
        if (spacing == Spacing::logarithmic && !(lo > 0.0))
            throw DomainError("logarithmic grid requires lo > 0");

        std::vector<double> xs(count);
        const double n = static_cast<double>(count - 1);
        if (spacing == Spacing::linear) {
            for (std::size_t i = 0; i < count; ++i)
                xs[i] = lo + (hi - lo) * (static_cast<double>(i) / n);
        } else {
            const double llo = std::log(lo);
            const double lhi = std::log(hi);
            for (std::size_t i = 0; i < count; ++i)
                xs[i] = std::exp(llo + (lhi - llo) * (static_cast<double>(i) / n));
        }
        xs.front() = lo;
        xs.back() = hi;
        if (offset != 0.0)
            for (double& x : xs) x += offset;
        return xs;
    }
};

} // namespace pglab
