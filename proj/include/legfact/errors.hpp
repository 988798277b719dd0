#pragma once

#include <stdexcept>
#include <string>

namespace legfact {

// Invalid user-supplied configuration: field string, f-spec, S-set, run limits.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested table or run exceeds the configured memory cap.
struct size_error : std::runtime_error {
    explicit size_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric procedure failed: quadrature non-convergence, ill-conditioned fit,
// truncation height too small for the requested evaluation.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Least-squares fit could not be performed (degenerate design matrix).
struct fit_error : std::runtime_error {
    explicit fit_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace legfact
