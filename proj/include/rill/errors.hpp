// errors.hpp: exception taxonomy shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace rill {

/// Base class for every error thrown by rill.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File or stream could not be read/written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Dataset header or declared schema is inconsistent.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A cell could not be parsed as a number.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A raw label is unknown under a frozen label map.
class EncodingError : public Error {
public:
    using Error::Error;
};

/// Bad experiment or model configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A value lies outside its admissible domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A query that requires data was made on an empty structure.
class EmptyStateError : public Error {
public:
    using Error::Error;
};

} // namespace rill
