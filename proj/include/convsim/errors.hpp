#pragma once

#include <stdexcept>
#include <string>

namespace convsim {

// Invalid distribution/model parameters (bad a/b/c, non-growing regime, ...).
struct parameter_error : std::invalid_argument {
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Input data violates an operation's preconditions (wrong support, too few samples, ...).
struct data_error : std::runtime_error {
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// An estimator failed to converge or the likelihood is degenerate.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace convsim
