#pragma once

#include <stdexcept>
#include <string>

namespace fractalmsg {

// Base for every error raised by the library. The CLI maps subclasses to
// exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter violates a documented constraint (a, b, rates, bands, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Text <-> bit conversion failed.
class EncodingError : public Error {
public:
    using Error::Error;
};

// The signal cannot be synthesized or decoded under the requested
// configuration (Nyquist, duration, synchronization).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// Input has no usable structure (constant signal, no spectral peak).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace fractalmsg
