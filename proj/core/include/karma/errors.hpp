#pragma once

#include <stdexcept>
#include <string>

namespace karma {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid run/search/synth configuration (bad option values, inconsistent setup).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Invalid argument to a library operation (alpha <= 0, K < 1, ...).
class ParamError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Problem with the data itself (non-finite samples, too-short records, parse failures).
class DataError : public Error {
public:
    using Error::Error;
};

/// Structural mismatch: wrong channel counts, duplicate names, dimension conflicts.
class SchemaError : public DataError {
public:
    using DataError::DataError;
};

/// Out-of-range index into a series or channel list.
class RangeError : public DataError {
public:
    using DataError::DataError;
};

/// Numerical failure that survived regularization (singular solves, divergence).
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace karma
