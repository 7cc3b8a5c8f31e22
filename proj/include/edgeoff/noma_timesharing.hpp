#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "edgeoff/lp.hpp"
#include "edgeoff/scenario.hpp"

namespace edgeoff::noma_timesharing {

/// decode_position[n] is the 0-based position at which device n is decoded.
struct SicOrder {
    std::vector<std::size_t> decode_position;

    /// Builds the order that decodes `sequence[0]` first.
    static SicOrder from_sequence(const std::vector<std::size_t>& sequence);
    std::vector<std::size_t> sequence() const;
    bool operator==(const SicOrder&) const = default;
};

/// Which data the per-device compute row must cover.
enum class ComputeRow {
    sensed_data,           // s0 t^s <= C_n t^c: the bits actually offloaded
    transmission_capacity  // sum_m tau_m t^o r_{n,m} <= C_n t^c: full transmission capacity
};

struct TimeSharingAllocation {
    double sense_ts = 0.0;
    double offload_to = 0.0;
    double compute_tc = 0.0;
    std::vector<SicOrder> orders;
    std::vector<double> fractions;
    std::vector<double> compute_share;   // by device id
    std::vector<double> offloaded_bits;  // by device id
    double throughput = 0.0;
};

/// r_{n,m} at full power; result[n][m].
std::vector<std::vector<double>> rate_matrix(const Scenario& scenario, const std::vector<SicOrder>& orders);

/// Common sensing rate; throws ParameterError when the devices differ.
double common_sensing_rate(const Scenario& scenario);

/// Columns: t^s, t^c, y_1..y_M (y_m = tau_m t^o), z_1..z_N (z_n = C_n t^c).
lp::LinearProgram build_p21_lp(const Scenario& scenario, const std::vector<SicOrder>& orders,
                               ComputeRow compute_row = ComputeRow::sensed_data);

struct GreedyOptions {
    std::size_t max_orders = 0;          // 0 selects 2N
    std::size_t exhaustive_limit = 6;    // full candidate pool up to this N
    double min_improvement = 1e-9;       // relative
};

/// Grows an order set from the descending-gain order. For small N every
/// permutation is a candidate and the one with the best LP value is added;
/// otherwise the candidate is the order that best prices against the sensing
/// rows' duals (decoded in ascending dual weight). Stops when the relative
/// gain drops below min_improvement, the candidate is already present, or
/// max_orders is reached.
std::vector<SicOrder> greedy_sic_set(const Scenario& scenario, const GreedyOptions& options = {});

TimeSharingAllocation solve_timesharing(const Scenario& scenario,
                                        const std::optional<std::vector<SicOrder>>& orders = std::nullopt,
                                        ComputeRow compute_row = ComputeRow::sensed_data);

/// N s0 T / [1 + N s0 / (B log2(1 + sum P_n(beta*) h_n / N0)) + N s0 / C].
double closed_form_fixed(const Scenario& scenario);

/// Same expression at full power; an upper bound on the time-sharing LP optimum for any order set.
double closed_form_sharing_prime(const Scenario& scenario);

}  // namespace edgeoff::noma_timesharing
