#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace edgeoff {

/// Frame-level parameters shared by every device. Defaults are the reference
/// simulation setup (1 s frame, 1 MHz, 1 nW noise, 10 Mbit/s edge capacity).
struct SystemParams {
    double frame_T = 1.0;             // seconds
    double bandwidth_B = 1e6;         // Hz
    double noise_N0 = 1e-9;           // W, total over the band
    double edge_capacity_C = 1e7;     // offloaded bits per second
    double pathloss_c = 1e-3;         // reference attenuation
    double pathloss_gamma = 3.5;      // pathloss exponent

    bool operator==(const SystemParams&) const = default;
};

struct Device {
    std::size_t id = 0;
    double distance_d = 1.0;     // m
    double fading_rho = 1.0;     // small-scale amplitude draw
    double gain_h = 1.0;         // channel power gain
    double sensing_s = 1.0;      // bits/s
    double max_power_P = 1.0;    // W
    double weight_w = 1.0;

    bool operator==(const Device&) const = default;
};

struct Scenario {
    SystemParams system;
    std::vector<Device> devices;

    std::size_t size() const { return devices.size(); }
    bool operator==(const Scenario&) const = default;
};

struct SensingRange {
    double min = 1e5;
    double max = 1e6;
};

struct GenerationOptions {
    double max_distance = 50.0;
    double max_power = 1.0;
    double weight = 1.0;
    /// When false, every fading draw is replaced by rho = 1 (pure pathloss).
    bool fading = true;
};

/// Throws ParameterError unless the scenario satisfies the documented
/// invariants (positive system fields, ids 0..N-1, positive gain/sensing/power).
void validate(const Scenario& scenario);
void validate(const SystemParams& params);

/// c * d^-gamma * rho^2
double pathloss_gain(const SystemParams& params, double distance, double fading);

/// Draws N devices: distance uniform on (0, max_distance], rho standard normal
/// (redrawn while rho^2 < 1e-12), sensing uniform on the given range.
/// Identical seeds give identical scenarios.
Scenario generate_scenario(const SystemParams& params, std::size_t n_devices, SensingRange sensing,
                           std::uint64_t seed, const GenerationOptions& options = {});

/// B * log2(1 + P h / (N0 + interference)), in bits/s.
double link_rate(const Device& device, const SystemParams& system, double interference = 0.0);

/// Interference-free rates for every device, in id order.
std::vector<double> link_rates(const Scenario& scenario);

/// Copy of the scenario with every sensing rate set to `value`.
Scenario with_equal_sensing(Scenario scenario, double value);

/// Mixes a base seed with further integers into a new 64-bit seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

}  // namespace edgeoff
