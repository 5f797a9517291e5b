#pragma once

#include <stdexcept>
#include <string>

namespace eldermodel {

// Parameter outside its documented domain. The CLI maps this to exit code 2.
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Iterative solver failed to reach tolerance. Carries the worst residual so
// failures are reportable instead of silent. CLI exit code 3.
struct convergence_error : std::runtime_error {
    double worst_residual;
    convergence_error(const std::string& msg, double residual)
        : std::runtime_error(msg), worst_residual(residual) {}
};

// Malformed input data (trait tables, index spec files). CLI exit code 2.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem problems: missing inputs, unwritable outputs. CLI exit code 4.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace eldermodel
