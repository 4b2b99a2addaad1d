#pragma once

#include <stdexcept>
#include <string>

namespace decaylab {

/// Base of every exception raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (configuration, parameters, preconditions).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of a function, or a target outside its range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A tail integral required to be finite diverges (the envelope is undefined).
class DivergentTailError : public Error {
public:
    using Error::Error;
};

/// A time step exceeds the explicit-part stability bound.
class StabilityViolation : public Error {
public:
    StabilityViolation(double dt, double bound);
    double dt() const noexcept { return dt_; }
    double bound() const noexcept { return bound_; }

private:
    double dt_;
    double bound_;
};

/// The discrete solution became non-finite or exploded at the given time.
class BlowupDetected : public Error {
public:
    explicit BlowupDetected(double time);
    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace decaylab
