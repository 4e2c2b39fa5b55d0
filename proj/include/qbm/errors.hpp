// errors.hpp — Exception types shared by the qbm library

#pragma once

#include <stdexcept>
#include <string>

namespace qbm {

// Precondition violations: negative times, non-positive tolerances, bad shapes.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quadrature or time-integration failures (non-convergence, non-finite values, drift).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qbm
