#include "edgeoff/noma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "edgeoff/errors.hpp"

namespace edgeoff::noma {

namespace {

// log(2^x - 1) for x = bits exponent, written in natural units.
double log_expm1(double z) {
    if (z > 30.0) return z + std::log1p(-std::exp(-z));
    return std::log(std::expm1(z));
}

// Sum of s_k over the devices decoded after `device`.
double later_sensing(const Scenario& sc, const std::vector<std::size_t>& order, std::size_t device) {
    double sum = 0.0;
    bool after = false;
    for (std::size_t k : order) {
        if (after) sum += sc.devices[k].sensing_s;
        if (k == device) after = true;
    }
    return sum;
}

}  // namespace

std::vector<std::size_t> decode_order(const Scenario& scenario) {
    std::vector<std::size_t> order(scenario.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scenario.devices[a].gain_h > scenario.devices[b].gain_h;
    });
    return order;
}

std::vector<double> power_for_ratio(const Scenario& scenario, double beta) {
    if (!(beta >= 0.0)) throw ParameterError("beta must be nonnegative");
    const auto order = decode_order(scenario);
    const double B = scenario.system.bandwidth_B;
    const double N0 = scenario.system.noise_N0;
    std::vector<double> power(scenario.size(), 0.0);
    double later = 0.0;
    for (std::size_t pos = order.size(); pos-- > 0;) {
        const Device& d = scenario.devices[order[pos]];
        power[order[pos]] = N0 / d.gain_h * std::expm1(d.sensing_s * beta / B * std::numbers::ln2) *
                            std::exp2(later * beta / B);
        later += d.sensing_s;
    }
    return power;
}

std::vector<double> sic_rates(const Scenario& scenario, std::span<const double> power) {
    if (power.size() != scenario.size()) throw ParameterError("power vector length does not match device count");
    const auto order = decode_order(scenario);
    std::vector<double> rates(scenario.size(), 0.0);
    double interference = 0.0;
    for (std::size_t pos = order.size(); pos-- > 0;) {
        const std::size_t n = order[pos];
        if (power[n] < 0.0) throw ParameterError("powers must be nonnegative");
        const Device& d = scenario.devices[n];
        const double sinr = power[n] * d.gain_h / (scenario.system.noise_N0 + interference);
        rates[n] = scenario.system.bandwidth_B * std::log1p(sinr) / std::numbers::ln2;
        interference += power[n] * d.gain_h;
    }
    return rates;
}

double log_power_for_ratio(const Scenario& scenario, std::size_t device, double beta) {
    const auto order = decode_order(scenario);
    const Device& d = scenario.devices.at(device);
    const double B = scenario.system.bandwidth_B;
    const double own = d.sensing_s * beta / B * std::numbers::ln2;
    const double rest = later_sensing(scenario, order, device) * beta / B * std::numbers::ln2;
    return std::log(scenario.system.noise_N0 / d.gain_h) + log_expm1(own) + rest;
}

double solve_beta_n(const Scenario& scenario, std::size_t device, double tolerance) {
    if (!(tolerance > 0.0)) throw ParameterError("bisection tolerance must be positive");
    const Device& d = scenario.devices.at(device);
    if (!(d.max_power_P > 0.0)) throw ParameterError("power cap must be positive");
    const double log_cap = std::log(d.max_power_P);
    // H(beta) > 0 iff the cap still covers the required power.
    auto positive = [&](double beta) {
        const double v = log_power_for_ratio(scenario, device, beta);
        if (std::isnan(v)) throw NumericError("power requirement is not finite for device " + std::to_string(device));
        return v < log_cap;
    };
    double lo = 0.0;
    double hi = 1.0;
    while (positive(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 0x1p60) throw NumericError("no bracket for beta below 2^60 for device " + std::to_string(device));
    }
    while (hi - lo > tolerance * std::min(hi, 1.0)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (positive(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

NomaAllocation solve_noma(const Scenario& scenario, double tolerance) {
    validate(scenario);
    const std::size_t n = scenario.size();
    const SystemParams& sys = scenario.system;
    NomaAllocation out;
    out.decode_order = decode_order(scenario);
    out.beta_star = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) out.beta_star = std::min(out.beta_star, solve_beta_n(scenario, k, tolerance));

    out.power = power_for_ratio(scenario, out.beta_star);
    out.rates = sic_rates(scenario, out.power);
    const double rate_sum = std::accumulate(out.rates.begin(), out.rates.end(), 0.0);
    double sensing_sum = 0.0;
    for (const Device& d : scenario.devices) sensing_sum += d.sensing_s;

    out.compute_share.assign(n, 0.0);
    out.offloaded_bits.assign(n, 0.0);
    if (!(out.beta_star > 0.0) || !(rate_sum > 0.0)) return out;

    const double b = out.beta_star;
    const double load = rate_sum / (sys.edge_capacity_C * b);
    out.sense_ts = sys.frame_T / (1.0 + 1.0 / b + load);
    out.offload_to = out.sense_ts / b;
    out.compute_tc = out.sense_ts * load;
    for (std::size_t k = 0; k < n; ++k) {
        out.compute_share[k] = sys.edge_capacity_C * out.rates[k] / rate_sum;
        out.offloaded_bits[k] = scenario.devices[k].sensing_s * out.sense_ts;
    }
    out.throughput = sensing_sum * out.sense_ts;
    return out;
}

}  // namespace edgeoff::noma
