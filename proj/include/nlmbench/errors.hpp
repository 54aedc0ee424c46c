#pragma once

#include <stdexcept>
#include <string>

namespace nlmbench {

// Base class for all library errors. kind() returns a stable lowercase token
// used in CLI error output ("error: <kind>: <message>").
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

class FileNotFound : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "file_not_found"; }
};

class IoError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "io_error"; }
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "unsupported_format"; }
};

class CorruptFile : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "corrupt_file"; }
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "dimension_mismatch"; }
};

class InvalidArgument : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_argument"; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "config_error"; }
};

}  // namespace nlmbench
