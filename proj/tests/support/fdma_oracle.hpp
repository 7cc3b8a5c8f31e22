#pragma once

#include "edgeoff/scenario.hpp"

namespace edgeoff::testing {

/// Zooming grid search over (t^s, t^o) with t^c = T - t^s - t^o and, at each
/// time point, over the full bandwidth simplex. Returns the best feasible
/// min(t^c C, sum_n min(t^s s_n, t^o g_n(alpha_n))). Intended for N <= 3.
double fdma_brute_force(const Scenario& scenario);

}  // namespace edgeoff::testing
