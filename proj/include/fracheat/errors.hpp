#pragma once

#include <stdexcept>
#include <string>

namespace fracheat {

// Bad inputs: preconditions, malformed configs, out-of-range parameters.
// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical or resource failures: eigensolver breakdown, precision budget
// exceeded, non-positive-definite reference forms. CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fracheat
