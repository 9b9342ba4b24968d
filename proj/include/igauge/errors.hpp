#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace igauge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-square input or non-conformable operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (T <= 0, N < 3, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Result would overflow double precision (e.g. exp(h0 * N) with |h0 N| > 300).
class RangeError : public Error {
public:
    using Error::Error;
};

/// The pseudo-Hermiticity condition (zero sinh average) does not hold.
class ConditionNotMetError : public Error {
public:
    using Error::Error;
};

/// The spectral ellipse collapses to a segment when h0 = 0.
class DegenerateEllipseError : public Error {
public:
    using Error::Error;
};

/// Iterative eigen-reduction exhausted its iteration budget.
class NoConvergenceError : public Error {
public:
    NoConvergenceError(const std::string& what, long iterations)
        : Error(what + " (after " + std::to_string(iterations) + " iterations)"), iterations_(iterations) {}

    long iterations() const noexcept { return iterations_; }

private:
    long iterations_;
};

/// Invalid run configuration; carries every violated constraint, not only the first.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (const auto& s : v) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

}  // namespace igauge
