#pragma once

#include <stdexcept>
#include <string>

namespace crari {

/// Failure categories. Each maps to a fixed process exit code in the CLI.
enum class ErrorKind {
    Format = 2,             ///< unparsable input (CSV cell, token, header)
    Structural = 3,         ///< empty row/column, shape mismatch, too little data
    Numeric = 4,            ///< degenerate variance, undefined ICC, non-convergence
    UnreachableTarget = 5,  ///< CRARI target outside the attainable ICC range
    Precondition = 6,       ///< caller violated a documented precondition
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& message);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& module() const noexcept { return module_; }
    [[nodiscard]] int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
    std::string module_;
};

class FormatError : public Error {
public:
    FormatError(std::string module, const std::string& message)
        : Error(ErrorKind::Format, std::move(module), message) {}
};

class StructuralError : public Error {
public:
    StructuralError(std::string module, const std::string& message)
        : Error(ErrorKind::Structural, std::move(module), message) {}
};

class NumericError : public Error {
public:
    NumericError(std::string module, const std::string& message)
        : Error(ErrorKind::Numeric, std::move(module), message) {}
};

class UnreachableTargetError : public Error {
public:
    UnreachableTargetError(const std::string& message, double icc_low, double icc_high)
        : Error(ErrorKind::UnreachableTarget, "imputation", message),
          reachable_low_(icc_low), reachable_high_(icc_high) {}

    /// Reachable ICC range [ICC at c = c_max, ICC at c = 0].
    [[nodiscard]] double reachable_low() const noexcept { return reachable_low_; }
    [[nodiscard]] double reachable_high() const noexcept { return reachable_high_; }

private:
    double reachable_low_;
    double reachable_high_;
};

class PreconditionError : public Error {
public:
    PreconditionError(std::string module, const std::string& message)
        : Error(ErrorKind::Precondition, std::move(module), message) {}
};

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

}  // namespace crari
