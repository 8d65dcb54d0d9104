#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, grids or scenario files.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// A phase mask would alias on the current grid.
class SamplingError : public ConfigurationError {
public:
    using ConfigurationError::ConfigurationError;
};

/// An operation was called on data in the wrong representation
/// (wrong domain, non-centered axis, mismatched grids).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

/// All-zero or otherwise degenerate input (nothing to normalize or fit).
class DegenerateInputError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A width measurement could not be obtained (fit did not converge).
class MeasurementError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Interference visibility below the numeric floor; the rate estimator diverges.
class SaturationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// P+ < P-: the constructive and destructive ports are swapped.
class PortLabelError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

}  // namespace biphoton
