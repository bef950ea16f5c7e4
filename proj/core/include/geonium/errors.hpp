#pragma once

#include <stdexcept>
#include <string>

namespace geonium {

// Base class for every error thrown by the library. Subclasses exist so
// callers can react to the failure kind without string matching.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A Hilbert-space dimension is out of range for the requested operation.
class InvalidDimensionError : public Error {
public:
    using Error::Error;
};

// An operator handed to a routine violates that routine's contract,
// e.g. a non-hermitian matrix passed to a propagator.
class ContractViolationError : public Error {
public:
    using Error::Error;
};

// A configuration value (file or struct) is malformed or unphysical.
class InvalidConfigError : public Error {
public:
    using Error::Error;
};

// A runtime input (state, target amplitudes, scale list) is malformed.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// No compensation pulse duration satisfies the requested constraints.
class InfeasibleCompensationError : public Error {
public:
    using Error::Error;
};

// A projective measurement cannot be sampled (zero-norm state).
class MeasurementDegenerateError : public Error {
public:
    using Error::Error;
};

} // namespace geonium
