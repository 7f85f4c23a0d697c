#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Pole of the Drude-like permittivity at omega = 0.
class ZeroFrequency : public DomainError {
public:
    using DomainError::DomainError;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

/// A closed-form law was requested for parameters where it degenerates (v = 0, gamma0 = 0).
class DegenerateModel : public DomainError {
public:
    using DomainError::DomainError;
};

class StepUnderflow : public Error {
public:
    using Error::Error;
};

class SignMixture : public DomainError {
public:
    using DomainError::DomainError;
};

class InsufficientData : public DomainError {
public:
    using DomainError::DomainError;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0, int column = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) +
                               ": " + what
                         : what),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace casimir
