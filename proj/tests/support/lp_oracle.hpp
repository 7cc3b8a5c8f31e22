#pragma once

#include <stdexcept>

#include "edgeoff/lp.hpp"

namespace edgeoff::testing {

struct UnboundedRegion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    lp::Status status = lp::Status::infeasible;  // optimal or infeasible
    double objective = 0.0;
};

/// Brute force over every basic solution: choose n active constraints among
/// the rows and the bounds x >= 0, solve, keep the feasible ones. Throws
/// UnboundedRegion when the feasible set has a recession direction.
OracleResult vertex_enumeration(const lp::LinearProgram& lp);

}  // namespace edgeoff::testing
