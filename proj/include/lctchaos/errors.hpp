#pragma once

#include <stdexcept>
#include <string>

namespace lctchaos {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's mathematical domain (negative t, r < 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Inconsistent shapes, invalid kinds, failed preconditions of a configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A root finder or quadrature failed to produce a value.
class NumericError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lctchaos
