#pragma once

#include <stdexcept>
#include <string>

namespace graspel {

/// Iterative eigensolver hit its iteration cap before reaching the
/// requested residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_;
};

/// Malformed input file; line numbers are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Requested an effective resistance across two different components.
class DisconnectedError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace graspel
