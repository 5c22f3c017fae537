// errors.hpp - exception types shared by the ultrawalks library and CLI
#pragma once

#include <stdexcept>
#include <string>

namespace ultrawalks {

// Invalid argument: out-of-range index, bad parameter, malformed input.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Parameter sits on a pole or zero of a closed-form expression (e.g. alpha in {0, 1}).
class SingularParameterError : public DomainError {
public:
    using DomainError::DomainError;
};

// Kernel profile fails its nonnegativity / normalization contract.
class KernelInvalidError : public DomainError {
public:
    using DomainError::DomainError;
};

class MassViolationError : public KernelInvalidError {
public:
    MassViolationError(const std::string& what, double mass)
        : KernelInvalidError(what), mass_(mass) {}
    double mass() const noexcept { return mass_; }

private:
    double mass_;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be read / written / parsed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ultrawalks
