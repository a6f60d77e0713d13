#pragma once

#include <stdexcept>
#include <string>

namespace springembed {

enum class ErrorKind {
    Input,        // malformed or out-of-contract arguments
    Validation,   // boundary face / partition fails structural checks
    Convergence,  // iterative solver or eigensolver hit its cap
    Rank,         // degenerate (collinear) embedding
    Degenerate,   // degenerate geometric input (all collinear points)
    Ordering,     // cyclic order inconsistent with the convex hull
    Refusal,      // size cap exceeded for a dense oracle
    Io,
};

const char* toString(ErrorKind kind) noexcept;

/// Base exception for the library. Every error carries a kind so callers
/// (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InputError : public Error {
public:
    explicit InputError(const std::string& message) : Error(ErrorKind::Input, message) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message)
        : Error(ErrorKind::Validation, message)
    {
    }
};

/// Raised when an iterative method stops before meeting its tolerance.
/// `residual()` holds the last relative residual that was observed.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, double residual)
        : Error(ErrorKind::Convergence, message), residual_(residual)
    {
    }

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class RankError : public Error {
public:
    explicit RankError(const std::string& message) : Error(ErrorKind::Rank, message) {}
};

class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& message)
        : Error(ErrorKind::Degenerate, message)
    {
    }
};

class OrderingError : public Error {
public:
    explicit OrderingError(const std::string& message) : Error(ErrorKind::Ordering, message) {}
};

class RefusalError : public Error {
public:
    explicit RefusalError(const std::string& message) : Error(ErrorKind::Refusal, message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(ErrorKind::Io, message) {}
};

}  // namespace springembed
