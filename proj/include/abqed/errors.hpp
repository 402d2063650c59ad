#pragma once

#include <stdexcept>
#include <string>

namespace abqed {

// Bad geometry / out-of-domain argument (e.g. path touching the fluxon).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// A quadrature or extrapolation failed to reach its tolerance.  The best
// available estimate is carried along with the residual bound.
struct AccuracyError : std::runtime_error {
    double best_estimate;
    double residual;
    explicit AccuracyError(const std::string& msg, double best = 0.0, double res = 0.0)
        : std::runtime_error(msg), best_estimate(best), residual(res) {}
};

// Malformed or inconsistent run configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace abqed
