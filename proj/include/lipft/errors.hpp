#pragma once

#include <stdexcept>
#include <string>

namespace lipft {

// Library errors all derive from Error so callers (and the CLI) can map
// them onto exit codes uniformly. The `code()` string is the stable
// machine-parsable prefix printed by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }
private:
    std::string code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error("E_DOMAIN", m) {}
};

struct DegenerateModulusError : Error {
    explicit DegenerateModulusError(const std::string& m) : Error("E_DEGENERATE_MODULUS", m) {}
};

struct InvalidPromotionError : Error {
    explicit InvalidPromotionError(const std::string& m) : Error("E_INVALID_PROMOTION", m) {}
};

struct InvalidExtensionError : Error {
    explicit InvalidExtensionError(const std::string& m) : Error("E_INVALID_EXTENSION", m) {}
};

struct QuadratureError : Error {
    explicit QuadratureError(const std::string& m) : Error("E_QUADRATURE", m) {}
};

struct DivergenceError : Error {
    explicit DivergenceError(const std::string& m) : Error("E_DIVERGENCE", m) {}
};

struct TruncationError : Error {
    explicit TruncationError(const std::string& m) : Error("E_TRUNCATION", m) {}
};

struct DecayError : Error {
    explicit DecayError(const std::string& m) : Error("E_DECAY", m) {}
};

struct UnsupportedDimensionError : Error {
    explicit UnsupportedDimensionError(const std::string& m) : Error("E_UNSUPPORTED_DIMENSION", m) {}
};

struct InapplicableError : Error {
    explicit InapplicableError(const std::string& m) : Error("E_INAPPLICABLE", m) {}
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& m) : Error("E_PARAMETER", m) {}
};

struct FitError : Error {
    explicit FitError(const std::string& m) : Error("E_FIT", m) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error("E_CONFIG", m) {}
};

// Thrown when an iterative estimate fails to stabilise; carries the partial
// values so callers can still inspect them.
class NonconvergenceError : public Error {
public:
    NonconvergenceError(const std::string& m, double partial_lower, double partial_upper)
        : Error("E_NONCONVERGENCE", m), partial_lower_(partial_lower), partial_upper_(partial_upper) {}
    double partial_lower() const { return partial_lower_; }
    double partial_upper() const { return partial_upper_; }
private:
    double partial_lower_, partial_upper_;
};

} // namespace lipft
