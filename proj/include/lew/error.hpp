#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lew {

/// Invalid or inconsistent configuration. `key()` names the offending setting.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Malformed text input (config or results file). `line()` is 1-based; 0 if unknown.
class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& message)
        : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Filesystem failure while reading or writing experiment artifacts.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Results that cannot be analyzed (empty input, missing baseline, too few runs).
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lew
