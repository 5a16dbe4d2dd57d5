#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgrank {

/// Base of every error thrown by the library. `kind()` is a short stable tag
/// used in machine-readable CLI error lines.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& message) : Error("parameter", message) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error("parse", "line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class GenerationError : public Error {
public:
    explicit GenerationError(const std::string& message) : Error("generation", message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("io", message) {}
};

/// Power iteration failed to settle. Carries the last iterate so callers can
/// still inspect it.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, std::vector<double> last_iterate, double residual)
        : Error("convergence", message), last_iterate_(std::move(last_iterate)), residual_(residual) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    std::vector<double> last_iterate_;
    double residual_;
};

} // namespace kgrank
