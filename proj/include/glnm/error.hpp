#pragma once

#include <stdexcept>
#include <string>

namespace glnm {

/// Bad input: invalid grid spec, inconsistent array sizes, out-of-range
/// indices. CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: exhausted energy window, stagnating residual,
/// non-finite state. CLI maps this to exit code 2.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace glnm
