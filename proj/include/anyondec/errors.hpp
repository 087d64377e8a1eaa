#pragma once

#include <stdexcept>
#include <string>

namespace anyondec {

/// Input outside the model's domain (invalid parameters, unsupported bias, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical routine did not reach its tolerance. Carries the error
/// estimate that was achieved when it gave up.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}

    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

/// Adaptive step size collapsed below floating resolution.
class StiffnessError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

/// Argument outside the range a numerical method can resolve.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

} // namespace anyondec
