#include "edgeoff/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "edgeoff/errors.hpp"

namespace edgeoff {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

void validate(const SystemParams& p) {
    if (!positive_finite(p.frame_T) || !positive_finite(p.bandwidth_B) || !positive_finite(p.noise_N0) ||
        !positive_finite(p.edge_capacity_C) || !positive_finite(p.pathloss_c) ||
        !positive_finite(p.pathloss_gamma)) {
        throw ParameterError("system parameters must all be strictly positive and finite");
    }
}

void validate(const Scenario& scenario) {
    validate(scenario.system);
    if (scenario.devices.empty()) throw ParameterError("scenario needs at least one device");
    for (std::size_t i = 0; i < scenario.devices.size(); ++i) {
        const Device& d = scenario.devices[i];
        if (d.id != i) throw ParameterError("device ids must be 0..N-1 in order");
        if (!positive_finite(d.gain_h)) throw ParameterError("device " + std::to_string(i) + ": gain must be > 0");
        if (!positive_finite(d.sensing_s))
            throw ParameterError("device " + std::to_string(i) + ": sensing rate must be > 0");
        if (!positive_finite(d.max_power_P))
            throw ParameterError("device " + std::to_string(i) + ": max power must be > 0");
        if (!(d.weight_w >= 0.0) || !std::isfinite(d.weight_w))
            throw ParameterError("device " + std::to_string(i) + ": weight must be >= 0");
    }
}

double pathloss_gain(const SystemParams& params, double distance, double fading) {
    return params.pathloss_c * std::pow(distance, -params.pathloss_gamma) * fading * fading;
}

Scenario generate_scenario(const SystemParams& params, std::size_t n_devices, SensingRange sensing,
                           std::uint64_t seed, const GenerationOptions& options) {
    validate(params);
    if (n_devices == 0) throw ParameterError("n_devices must be >= 1");
    if (!(sensing.min > 0.0) || !(sensing.min <= sensing.max) || !std::isfinite(sensing.max))
        throw ParameterError("sensing range must satisfy 0 < s_min <= s_max");
    if (!(options.max_distance > 0.0)) throw ParameterError("max_distance must be > 0");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    Scenario out;
    out.system = params;
    out.devices.reserve(n_devices);
    for (std::size_t n = 0; n < n_devices; ++n) {
        Device d;
        d.id = n;
        // unit() is on [0, 1), so this lands on (0, max_distance].
        d.distance_d = options.max_distance * (1.0 - unit(rng));
        double rho = normal(rng);
        while (rho * rho < 1e-12) rho = normal(rng);
        d.fading_rho = options.fading ? rho : 1.0;
        d.gain_h = pathloss_gain(params, d.distance_d, d.fading_rho);
        const double u = unit(rng);
        d.sensing_s = sensing.min == sensing.max ? sensing.min : sensing.min + (sensing.max - sensing.min) * u;
        d.max_power_P = options.max_power;
        d.weight_w = options.weight;
        out.devices.push_back(d);
    }
    return out;
}

double link_rate(const Device& device, const SystemParams& system, double interference) {
    const double snr = device.max_power_P * device.gain_h / (system.noise_N0 + interference);
    return system.bandwidth_B * std::log1p(snr) / std::numbers::ln2;
}

std::vector<double> link_rates(const Scenario& scenario) {
    std::vector<double> r;
    r.reserve(scenario.size());
    for (const Device& d : scenario.devices) r.push_back(link_rate(d, scenario.system));
    return r;
}

Scenario with_equal_sensing(Scenario scenario, double value) {
    for (Device& d : scenario.devices) d.sensing_s = value;
    return scenario;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(base) ^ a) ^ b);
}

}  // namespace edgeoff
