#pragma once

#include <stdexcept>
#include <string>

namespace calibrix {

/// A named parameter constraint failed. `constraint` carries the short name
/// used in CLI diagnostics (e.g. "eps < x0/10").
class ConstraintViolation : public std::runtime_error {
public:
    explicit ConstraintViolation(std::string constraint, std::string detail = {})
        : std::runtime_error("constraint violated: " + constraint +
                             (detail.empty() ? "" : " (" + detail + ")")),
          constraint_(std::move(constraint)) {}

    const std::string& constraint() const { return constraint_; }

private:
    std::string constraint_;
};

/// A theorem hypothesis on the harmonic input failed (maps to CLI exit 2).
class HypothesisError : public ConstraintViolation {
public:
    using ConstraintViolation::ConstraintViolation;
};

/// Newton inversion of the conformal chart did not converge.
class NoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation outside the admissible domain of a closed form.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace calibrix
