#pragma once

#include <stdexcept>
#include <string>

namespace npchange {

/// Invalid configuration value (bandwidth, trim fraction, grid bounds, ...).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// The series is too short for the requested trimmed scan range.
class ScanInfeasibleError : public std::runtime_error {
public:
    explicit ScanInfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace npchange
