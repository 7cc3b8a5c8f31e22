#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edgeoff/scenario.hpp"

namespace edgeoff::noma {

struct NomaAllocation {
    double sense_ts = 0.0;
    double offload_to = 0.0;
    double compute_tc = 0.0;
    double beta_star = 0.0;
    std::vector<std::size_t> decode_order;  // device ids, first decoded first
    std::vector<double> power;              // by device id
    std::vector<double> rates;
    std::vector<double> compute_share;
    std::vector<double> offloaded_bits;
    double throughput = 0.0;
};

/// Descending channel gain; equal gains keep id order.
std::vector<std::size_t> decode_order(const Scenario& scenario);

/// Powers under which every device's SIC rate is exactly s_n * beta:
/// P_n = (N0 / h_n) (2^{s_n beta / B} - 1) 2^{sum_{k decoded after n} s_k beta / B}.
std::vector<double> power_for_ratio(const Scenario& scenario, double beta);

/// r_n = B log2(1 + P_n h_n / (N0 + sum_{k decoded after n} P_k h_k)).
std::vector<double> sic_rates(const Scenario& scenario, std::span<const double> power);

/// log of P_n(beta), finite for beta > 0 even when 2^{s beta / B} overflows.
double log_power_for_ratio(const Scenario& scenario, std::size_t device, double beta);

/// Largest beta at which device n stays within its power cap. Bracketing by
/// doubling from 1, then bisection to an interval narrower than
/// tolerance * min(upper bracket, 1);
/// the lower end is returned so the cap is never exceeded.
double solve_beta_n(const Scenario& scenario, std::size_t device, double tolerance = 1e-9);

NomaAllocation solve_noma(const Scenario& scenario, double tolerance = 1e-9);

}  // namespace edgeoff::noma
