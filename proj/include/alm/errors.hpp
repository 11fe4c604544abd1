#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace alm {

// Field-level validation failure. Carries one message per violated field.
class InvalidParams : public std::invalid_argument {
public:
    explicit InvalidParams(std::vector<std::string> violations)
        : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid parameters:";
        for (const auto& s : v) out += " [" + s + "]";
        return out;
    }
    std::vector<std::string> violations_;
};

// Argument outside the mathematical domain of an operation (e.g. kappa*c >= 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Adaptive quadrature could not meet its tolerance within the depth budget.
class QuadratureFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Density requested for a distribution that has no density.
class UnsupportedForPointMass : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Operation not defined under the configured truncation mode
// (sampling from the restriction sub-probability measure).
class UnsupportedMode : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// h(0) <= 0: no root of h in [0, 1/c). Carries the existence margin h(0).
class NoRootInRange : public std::runtime_error {
public:
    explicit NoRootInRange(double h_at_zero)
        : std::runtime_error("no root in [0, 1/c): h(0) = " + std::to_string(h_at_zero)),
          h_at_zero_(h_at_zero) {}

    double h_at_zero() const { return h_at_zero_; }

private:
    double h_at_zero_;
};

// Generic numerical breakdown (bracket could not be established, iteration cap, ...).
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A simulated wealth path was driven to a non-positive value.
class PositivityBreach : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Power utility overflowed (eta > 1 with terminal wealth underflowing to 0).
class UtilityOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Configuration file could not be parsed or mapped onto the expected schema.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace alm
