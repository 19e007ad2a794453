#pragma once

#include <stdexcept>
#include <string>

namespace lightshift {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad configuration, inconsistent parameters, wrong space.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A physics or resource guard refused the request (step guard, pulse speed,
/// dimension limit, failed calibration).
class GuardError : public Error {
public:
    using Error::Error;
};

/// A numerical precondition failed (non-Hermitian generator and the like).
class NumericsError : public Error {
public:
    using Error::Error;
};

} // namespace lightshift
