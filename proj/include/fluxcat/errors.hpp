#pragma once

#include <stdexcept>
#include <string>

namespace fluxcat {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Violated precondition or physical-validity contract (bad argument,
/// expansion parameter out of range, device invariant broken, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Malformed catalog / device / report document. `where` is a source
/// location: "<source>:<json pointer>" or "<source>:<line>:<column>".
class SchemaError : public Error {
public:
    SchemaError(std::string where, const std::string& message)
        : Error(where + ": " + message), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// A quadrature or iterative procedure failed its convergence check.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

/// Requested computation exceeds a configured resource guardrail.
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& what) : Error(what) {}
};

}  // namespace fluxcat
