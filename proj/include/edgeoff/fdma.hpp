#pragma once

#include <cstddef>
#include <vector>

#include "edgeoff/scenario.hpp"

namespace edgeoff::fdma {

struct TimeSplit {
    double sense_ts = 0.0;
    double offload_to = 0.0;
    double compute_tc = 0.0;
};

struct FdmaAllocation {
    double sense_ts = 0.0;
    double offload_to = 0.0;
    double compute_tc = 0.0;
    std::vector<double> alpha;
    std::vector<double> compute_share;
    std::vector<double> bits_l;  // feasible per-device throughput under the true rate
    double total = 0.0;
    double upper_bound = 0.0;    // tangent-relaxation value at the returned times
};

struct InnerResult {
    double value = 0.0;
    double upper_bound = 0.0;
    std::vector<double> alpha;
    std::vector<double> bits_l;
    std::size_t cuts = 0;
};

struct FdmaOptions {
    std::size_t tangent_count = 64;
    double alpha_min = 1e-4;
    double time_resolution = 1e-4;  // fraction of T
    std::size_t seed_grid = 20;
};

/// g(alpha) = alpha B log2(1 + P h / (alpha N0)); g(0) = 0.
double subband_rate(double alpha, const Device& device, const SystemParams& system);

/// g'(alpha) = B (ln(1 + q) - q / (1 + q)) / ln 2 with q = P h / (alpha N0).
double subband_rate_slope(double alpha, const Device& device, const SystemParams& system);

/// K abscissae log-spaced on [alpha_min, 1].
std::vector<double> tangent_points(std::size_t count, double alpha_min);

/// Per-device active cut indices into tangent_points; carried between calls
/// to start later solves from cuts that were binding before.
using CutSet = std::vector<std::vector<std::size_t>>;

/// LP over (l, alpha) at fixed times: l_n <= t^s s_n, sum alpha <= 1,
/// sum l <= t^c C (when `compute_row`), and tangent cuts l_n <= t^o (g(a) + g'(a)(alpha_n - a)).
/// Cuts come from the K-point pool and are added while any is violated, so
/// the optimum equals the full K-cut program.
InnerResult inner_value(const Scenario& scenario, const TimeSplit& times, std::size_t tangent_count = 64,
                        bool compute_row = true, CutSet* warm = nullptr, double alpha_min = 1e-4);

/// Compute-free relaxed value max sum_n min(t^s s_n, t^o ghat_n(alpha_n)) s.t. sum alpha <= 1,
/// where ghat_n is the K-tangent envelope. Separable concave piecewise-linear
/// pieces under one budget, so a greedy over segment slopes is exact and
/// equals inner_value(..., compute_row = false).upper_bound.
double envelope_value(const Scenario& scenario, double sense_ts, double offload_to, std::size_t tangent_count = 64,
                      double alpha_min = 1e-4);

/// The relaxation is degree-1 homogeneous in (t^s, t^o), so with w(theta) the
/// compute-free inner value at (theta, 1 - theta) the best split satisfies
/// t^c C = (T - t^c) w, i.e. total T C w / (C + w). w is concave, and is
/// maximized by a seed grid plus golden-section search on theta;
/// the final split is then solved with inner_value.
FdmaAllocation solve_fdma(const Scenario& scenario, const FdmaOptions& options = {});

}  // namespace edgeoff::fdma
