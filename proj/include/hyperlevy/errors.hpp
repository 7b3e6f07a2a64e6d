#pragma once

#include <stdexcept>
#include <string>

namespace hyperlevy {

// Invalid arguments: nonpositive Beta parameters, inadmissible (d, k) pairs,
// out-of-range orders. The CLI maps this to exit code 2.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Base for failures of an otherwise valid numerical computation (exit code 3).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative scheme (continued fraction, quadrature refinement) did not
// reach its tolerance. Carries the error estimate it did reach.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double achieved)
        : NumericalError(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// |phi(t)| did not fall below the truncation threshold inside the allowed
// frequency window.
class DecayError : public NumericalError {
public:
    DecayError(const std::string& what, double achieved_abs_cf)
        : NumericalError(what), achieved_(achieved_abs_cf) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Sampler configurations that cannot be simulated (delta too small, Gaussian
// small-jump proxy not justified).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace hyperlevy
