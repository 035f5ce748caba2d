#pragma once

#include <stdexcept>
#include <string>

namespace qig {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the mathematical domain of an operation
// (nonpositive eigenvalue passed to log, spec without the requested
// quantity, mismatched matrix kinds, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Incompatible dimensions between operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Iterative routine failed to reach its stopping criterion.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_ = 0.0;
};

// Numerically valid input that is too ill-conditioned to process
// (eigenvalue below the faithfulness floor, singular group element, ...).
class ConditioningError : public Error {
public:
    using Error::Error;
};

// Malformed user-facing input: CLI arguments, spec strings, JSON files.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace qig
