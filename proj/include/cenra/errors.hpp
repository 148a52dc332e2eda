#pragma once

#include <stdexcept>
#include <string>

namespace cenra {

// Bad configuration: unparseable files, out-of-range settings, malformed layouts.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller violated a documented precondition (wrong task id, step after done, ...).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite value showed up where the math requires finite numbers.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Shortest-path oracle asked about a state it cannot answer for.
struct OracleError : std::runtime_error {
    explicit OracleError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem trouble: missing files, unwritable outputs, truncated checkpoints.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cenra
