#pragma once

#include <stdexcept>
#include <string>

namespace tsetlin {

/// Malformed or inconsistent input data (files, tables, feature rows).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string &what) : std::runtime_error(what) {}
};

/// Hyperparameter or configuration value outside its valid range.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace tsetlin
