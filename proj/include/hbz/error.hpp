#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hbz {

enum class ErrorCode {
    InvalidArgument,
    SingularMatrix,
    NonConvergence,
    MultipleRoots,
    IllConditionedVandermonde,
    RetriesExhausted,
    ResidualImaginary,
    EvenControlCount,
    FactorizationFailed,
    ImaginaryRemnant,
    GenerationExhausted,
    ParseError,
    DimensionMismatch,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for everything this library throws.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Every gamma draw of a factorization was rejected.
class RetriesExhausted : public Error {
public:
    RetriesExhausted(const std::string& what, double best_residual, ErrorCode last_cause)
        : Error(ErrorCode::RetriesExhausted, what), best_residual_(best_residual), last_cause_(last_cause)
    {
    }

    /// Smallest reconstruction residual among the attempts that got that far (inf if none did).
    double best_residual() const noexcept { return best_residual_; }
    ErrorCode last_cause() const noexcept { return last_cause_; }

private:
    double best_residual_;
    ErrorCode last_cause_;
};

/// Polygon text input errors carry the 1-based line they were detected on.
class InputError : public Error {
public:
    InputError(ErrorCode code, std::size_t line, const std::string& what)
        : Error(code, "line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A curve axis could not be put in Hankel form; carries which axis and why.
class FactorizationFailed : public Error {
public:
    FactorizationFailed(std::size_t axis, ErrorCode cause, const std::string& what)
        : Error(ErrorCode::FactorizationFailed, "axis " + std::to_string(axis) + ": " + what), axis_(axis), cause_(cause)
    {
    }

    std::size_t axis() const noexcept { return axis_; }
    ErrorCode cause() const noexcept { return cause_; }

private:
    std::size_t axis_;
    ErrorCode cause_;
};

} // namespace hbz
