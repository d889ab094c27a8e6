#pragma once

#include <stdexcept>
#include <string>

namespace qrr {

/// Base class of every failure the engine can signal.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Inconsistent configuration: mixed exponent denominators, malformed
/// environments or factor specifications, unknown catalog ids.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An exact division failed. During identity verification this means the two
/// sides genuinely differ (e.g. an odd coefficient where a 1/2 prefactor
/// demands even ones), so the registry reports it as FAIL rather than ERROR.
class ExactnessError : public Error {
public:
    using Error::Error;
};

/// The lowest-order term of a series is not a unit monomial, so no truncated
/// reciprocal exists.
class InversionError : public Error {
public:
    using Error::Error;
};

/// A sum whose terms do not have q-order growing to infinity has no
/// well-defined truncated value.
class GradingError : public Error {
public:
    using Error::Error;
};

/// Shell enumeration failed to reach its stopping rule within the guard.
class NonTerminationError : public Error {
public:
    using Error::Error;
};

/// A knob value outside the validated range of a catalog entry.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

} // namespace qrr
