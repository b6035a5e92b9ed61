#pragma once

#include <stdexcept>
#include <string>

namespace isoframe {

/** Root of the library's exception hierarchy. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Malformed input text or invalid construction parameters (CLI exit 2). */
class UsageError : public Error {
public:
    using Error::Error;
};

/** Operand outside a domain/codomain or an ill-posed geometric request (CLI exit 3). */
class DomainError : public Error {
public:
    using Error::Error;
};

/** A numeric procedure failed to reach its tolerance (CLI exit 4). */
class NumericError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public UsageError {
public:
    SyntaxError(const std::string& msg, std::size_t position)
        : UsageError(msg + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

class UnknownIdentifier : public UsageError {
public:
    using UsageError::UsageError;
};

class UnknownMapping : public UsageError {
public:
    using UsageError::UsageError;
};

class InvalidParam : public UsageError {
public:
    using UsageError::UsageError;
};

class DomainViolation : public DomainError {
public:
    using DomainError::DomainError;
};

class RangeViolation : public DomainError {
public:
    using DomainError::DomainError;
};

class DivisorZero : public DomainError {
public:
    using DomainError::DomainError;
};

class BondingViolation : public DomainError {
public:
    using DomainError::DomainError;
};

class DomainMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

class SingularGenerator : public DomainError {
public:
    using DomainError::DomainError;
};

class NonPositiveValue : public DomainError {
public:
    using DomainError::DomainError;
};

class NotBracketed : public DomainError {
public:
    using DomainError::DomainError;
};

class NonMonotoneDetected : public DomainError {
public:
    using DomainError::DomainError;
};

class NotInvertible : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateFrame : public DomainError {
public:
    using DomainError::DomainError;
};

class IOError : public DomainError {
public:
    using DomainError::DomainError;
};

class NonConvergent : public NumericError {
public:
    using NumericError::NumericError;
};

class DivergentImproper : public NumericError {
public:
    using NumericError::NumericError;
};

class NoRoot : public NumericError {
public:
    using NumericError::NumericError;
};

class IndeterminateMonotonicity : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace isoframe
