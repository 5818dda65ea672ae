// errors.hpp: exception types shared by the randbath library

#pragma once

#include <stdexcept>
#include <string>

namespace randbath {

// Argument outside the mathematical domain of an operation (negative
// frequency, |F| > 1, t = 0 for the phase distribution, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid configuration value. `field` names the offending parameter.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Operation called with a configuration it does not support
// (closed forms outside n in {1,3} / linear profile, perturbative
// corrections for other n).
class MisuseError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Adaptive integration did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double achieved_error)
        : std::runtime_error(what), estimate_(best_estimate), error_(achieved_error) {}

    double best_estimate() const noexcept { return estimate_; }
    double achieved_error() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

}  // namespace randbath
