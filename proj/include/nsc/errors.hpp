#pragma once

#include <stdexcept>
#include <string>

namespace nsc {

/// Malformed or inconsistent input data (CSV problems, degenerate classes, ...).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (singular systems, ill-posed covariance, ...).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nsc
