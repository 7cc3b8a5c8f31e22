#pragma once

#include <random>

#include "edgeoff/lp.hpp"

namespace edgeoff::testing {

/// Random LP with at most `max_vars` variables and `max_rows` rows whose
/// feasible region is bounded (first row is a positive-coefficient cap).
/// Most instances are feasible by construction around a random interior point;
/// about one in five has its right-hand sides perturbed and may be infeasible.
inline lp::LinearProgram random_bounded_lp(std::mt19937_64& rng, std::size_t max_vars = 8,
                                           std::size_t max_rows = 8) {
    std::uniform_int_distribution<std::size_t> nv(1, max_vars), nr(1, max_rows);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), pos(0.1, 1.0), unit(0.0, 1.0);
    const std::size_t n = nv(rng), m = nr(rng);
    lp::LinearProgram lp(n, unit(rng) < 0.5 ? lp::Sense::maximize : lp::Sense::minimize);
    for (double& c : lp.objective) c = coef(rng);

    std::vector<double> x0(n);
    for (double& v : x0) v = unit(rng) / static_cast<double>(n);
    const bool perturb = unit(rng) < 0.2;

    std::vector<double> cap(n);
    for (double& a : cap) a = pos(rng);
    double cap_rhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) cap_rhs += cap[j] * x0[j];
    lp.add_row(cap, lp::Relation::less_equal, cap_rhs + 0.5 + unit(rng));

    for (std::size_t i = 1; i < m; ++i) {
        std::vector<double> a(n);
        for (double& v : a) v = coef(rng);
        double ax = 0.0;
        for (std::size_t j = 0; j < n; ++j) ax += a[j] * x0[j];
        const double u = unit(rng);
        double shift = perturb ? coef(rng) : 0.0;
        if (u < 0.65) {
            lp.add_row(a, lp::Relation::less_equal, ax + 0.3 * unit(rng) + shift);
        } else if (u < 0.85) {
            lp.add_row(a, lp::Relation::greater_equal, ax - 0.3 * unit(rng) + shift);
        } else {
            lp.add_row(a, lp::Relation::equal, ax + 0.2 * shift);
        }
    }
    return lp;
}

}  // namespace edgeoff::testing
