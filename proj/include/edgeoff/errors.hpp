#pragma once

#include <stdexcept>
#include <string>

namespace edgeoff {

/// Invalid caller-supplied parameters (ranges, sizes, preconditions).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation produced a non-finite or otherwise unusable intermediate.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An LP stage inside a scheme solver did not return an optimal point.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace edgeoff
