#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cutspec {

/// Process-level error classes. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
    input = 2,
    guard = 3,
    numerical = 4,
    internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string kind, const std::string& message)
        : std::runtime_error(message), code_(code), kind_(std::move(kind)) {}

    ErrorCode code() const noexcept { return code_; }
    /// Machine-readable identifier, e.g. "parse_error".
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorCode code_;
    std::string kind_;
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& message)
        : Error(ErrorCode::input, "dimension_error", message) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(ErrorCode::input, "parse_error",
                message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& message)
        : Error(ErrorCode::input, "precondition_error", message) {}
};

/// Refusal to run an operation whose cost or size exceeds a configured guard.
class GuardRefusal : public Error {
public:
    explicit GuardRefusal(const std::string& message)
        : Error(ErrorCode::guard, "guard_refusal", message) {}
};

class NumericalError : public Error {
public:
    NumericalError(const std::string& message, double residual)
        : Error(ErrorCode::numerical, "numerical_error",
                message + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& message)
        : Error(ErrorCode::internal, "internal_error", message) {}
};

}  // namespace cutspec
