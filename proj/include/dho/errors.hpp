#pragma once

#include <stdexcept>
#include <string>

namespace dho {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter fails a family's construction constraints.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

// Input lies outside the operation's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// The zero/positivity pattern in the scan window matches no representation type.
class UnclassifiableError : public Error {
public:
    using Error::Error;
};

// A series or quadrature failed to reach the requested tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// The requested operation has no implementation for this family.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

} // namespace dho
