#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

// Invalid parameters or configuration (CLI exit code 2).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Field fails the edge-decay guard required by a functional definition.
struct GuardError : ValidationError {
    using ValidationError::ValidationError;
};

// Blow-up, non-convergence, NaN/Inf propagation (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File I/O failure (CLI exit code 4).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dnls
