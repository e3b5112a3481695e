#pragma once

#include <stdexcept>
#include <string>

namespace smpd {

/// Bad input: malformed document, out-of-range field, broken precondition.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Computation failed: non-finite state, non-converged iteration, degenerate fit.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace smpd
