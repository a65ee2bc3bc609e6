#pragma once

#include <stdexcept>
#include <string>

namespace fireseverity {

// Exit-code contract: 2 config, 3 input, 4 numeric/validation.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an operation would return an empty result that callers must
// not silently consume (e.g. imputation dropping every row).
class EmptyResultError : public ValidationError {
public:
    explicit EmptyResultError(const std::string& msg) : ValidationError(msg) {}
};

} // namespace fireseverity
