#pragma once

#include <stdexcept>
#include <string>

namespace pglab {

// Argument outside the function's domain (e.g. psi on x <= -1, theta <= 0).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Argument at a pole of the function (psi at 0, -1, -2, ...).
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// A series or quadrature failed to meet its error target within budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Wrapper used by the check engine: records which abscissa failed to evaluate.
class EvalError : public std::runtime_error {
public:
    EvalError(double x, const std::string& what)
        : std::runtime_error(what), x_(x) {}
    double where() const noexcept { return x_; }

private:
    double x_;
};

} // namespace pglab
