#pragma once

#include <cmath>
#include <vector>

#include "edgeoff/scenario.hpp"

namespace edgeoff::testing {

// B = N0 = P = 1, so each device's interference-free rate is exactly r[n].
inline Scenario rate_scenario(const std::vector<double>& s, const std::vector<double>& r, double capacity = 1e300,
                              double frame = 1.0) {
    Scenario sc;
    sc.system.frame_T = frame;
    sc.system.bandwidth_B = 1.0;
    sc.system.noise_N0 = 1.0;
    sc.system.edge_capacity_C = capacity;
    for (std::size_t n = 0; n < s.size(); ++n) {
        Device d;
        d.id = n;
        d.gain_h = std::exp2(r[n]) - 1.0;
        d.sensing_s = s[n];
        d.max_power_P = 1.0;
        sc.devices.push_back(d);
    }
    return sc;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace edgeoff::testing
