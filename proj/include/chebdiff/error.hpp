#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chebdiff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression source. `offset` is the 1-based column of the
/// offending character; one past the last character for early end of input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Argument outside the domain of a function, or a function that is not
/// finite somewhere on its declared domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance within budget.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best_value, double best_error)
        : Error(what), best_value_(best_value), best_error_(best_error) {}

    double best_value() const noexcept { return best_value_; }
    double best_error() const noexcept { return best_error_; }

private:
    double best_value_;
    double best_error_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A bound evaluator was asked for a case whose constants were not supplied.
class MissingConstantError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

}  // namespace chebdiff
