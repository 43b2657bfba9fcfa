#pragma once

#include <stdexcept>
#include <string>

namespace lmpipe {

// Base class for all lmpipe errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Malformed user-provided text: shorthand signatures, datasets, config files.
class ParseError : public Error {
public:
    using Error::Error;
};

// Program-shape problems: unknown predictor paths, incompatible student/teacher
// structures, artifact/program mismatches.
class StructureError : public Error {
public:
    using Error::Error;
};

// Bad run configuration: missing files, unknown registry names, invalid options.
class ConfigError : public Error {
public:
    using Error::Error;
};

// LM backend failure that is not worth retrying: unknown model, exhausted
// script, malformed payload, 4xx-class remote errors.
class BackendError : public Error {
public:
    using Error::Error;
};

// Transient transport failure (connection refused, 5xx). The client retries these.
class TransportError : public BackendError {
public:
    using BackendError::BackendError;
};

} // namespace lmpipe
