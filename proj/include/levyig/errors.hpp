#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace levyig {

/// Invalid parameter values or evaluation outside an operation's domain.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A stated precondition does not hold (e.g. non-equivalent process pair).
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure (non-convergent or divergent quadrature, bad stencil).
/// Carries the partial estimate when one is available.
struct numeric_error : std::runtime_error {
    double partial;
    explicit numeric_error(const std::string& msg,
                           double partial_estimate = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(msg), partial(partial_estimate) {}
};

/// Malformed configuration input (bad file, unknown key, missing field).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace levyig
