#pragma once

#include <stdexcept>
#include <string>

namespace gkcs {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Gamma-type function evaluated at a pole (nonpositive integer).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Result not representable in double precision.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A Pochhammer denominator vanished in a terminating hypergeometric sum.
class SingularParameterError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A cancelling sum lost too many significant digits to be trusted.
class ConditioningError : public std::runtime_error {
public:
    ConditioningError(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

/// Quadrature or series ran out of its evaluation budget. Carries the best
/// estimate found so far.
class BudgetExceededError : public std::runtime_error {
public:
    BudgetExceededError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_(best_estimate), error_(error_estimate) {}
    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return error_; }

private:
    double best_;
    double error_;
};

/// Fock truncation would exceed the configured hard cap.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal cross-check between two independent routes disagreed.
class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gkcs
