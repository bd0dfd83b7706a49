#pragma once

#include <stdexcept>
#include <string>

namespace ofq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A parameter violates a type invariant (negative rate, probability out of
/// range, ...).
class InvalidParameterError : public Error {
public:
    explicit InvalidParameterError(const std::string& what) : Error(what) {}
};

/// Offered load at or above capacity; carries the offending utilization.
class InstabilityError : public Error {
public:
    InstabilityError(const std::string& what, double utilization)
        : Error(what), utilization_(utilization) {}

    double utilization() const noexcept { return utilization_; }

private:
    double utilization_;
};

/// Iterative solver failed to reach its residual target.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// 2x2 inversion hit a vanishing determinant.
class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

/// Malformed input file; line/column are 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Structurally valid input that fails scenario validation.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Bad run configuration (zero horizon, warmup >= horizon, ...).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Filesystem failure; message carries the path.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace ofq
