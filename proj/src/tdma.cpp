#include "edgeoff/tdma.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "edgeoff/errors.hpp"

namespace edgeoff::tdma {

namespace {

std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

// suffix[i] = prod_{j >= i} r_j / (s_j + r_j) in slot order; suffix[N] = 1.
std::vector<double> suffix_ratios(const Scenario& scenario, const OffloadingSequence& seq,
                                  const std::vector<double>& rates) {
    const std::size_t n = seq.size();
    std::vector<double> suffix(n + 1, 1.0);
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t dev = seq.slot_to_device[i];
        const double s = scenario.devices[dev].sensing_s;
        const double denom = s + rates[dev];
        if (!(denom > 0.0)) throw NumericError("sensing plus transmission rate is zero for device " + std::to_string(dev));
        suffix[i] = suffix[i + 1] * rates[dev] / denom;
    }
    return suffix;
}

}  // namespace

void validate(const OffloadingSequence& seq, std::size_t n) {
    if (seq.size() != n) throw ParameterError("offloading sequence length does not match device count");
    std::vector<bool> seen(n, false);
    for (std::size_t d : seq.slot_to_device) {
        if (d >= n || seen[d]) throw ParameterError("offloading sequence is not a permutation");
        seen[d] = true;
    }
}

OffloadingSequence schedule_ascending_weighted_rate(const Scenario& scenario) {
    const std::vector<double> r = link_rates(scenario);
    std::vector<double> key(r.size());
    for (std::size_t n = 0; n < r.size(); ++n) key[n] = scenario.devices[n].weight_w * r[n];
    std::vector<std::size_t> order = identity(r.size());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    return {order};
}

SlotTimes closed_form_times(const Scenario& scenario, const OffloadingSequence& seq, double compute_tc) {
    const double frame = scenario.system.frame_T;
    if (!(compute_tc >= 0.0 && compute_tc <= frame)) throw ParameterError("compute time must lie in [0, T]");
    validate(seq, scenario.size());
    const std::vector<double> rates = link_rates(scenario);
    const std::vector<double> suffix = suffix_ratios(scenario, seq, rates);
    const double active = frame - compute_tc;
    const std::size_t n = seq.size();

    SlotTimes out;
    out.sense_t1s = active * suffix[0];
    out.slot_times.resize(n);
    out.slot_times[0] = active * suffix[1];
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t dev = seq.slot_to_device[i];
        const double s = scenario.devices[dev].sensing_s;
        out.slot_times[i] = active * s / (s + rates[dev]) * suffix[i + 1];
    }
    return out;
}

SlotCoefficients slot_data_coefficients(const Scenario& scenario, const OffloadingSequence& seq) {
    validate(seq, scenario.size());
    const std::vector<double> rates = link_rates(scenario);
    const std::vector<double> suffix = suffix_ratios(scenario, seq, rates);
    SlotCoefficients out;
    out.mu.resize(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        out.mu[i] = scenario.devices[seq.slot_to_device[i]].sensing_s * suffix[i];
        out.lambda += out.mu[i];
    }
    return out;
}

ComputeSplit compute_split(double lambda, std::span<const double> mu, const SystemParams& system) {
    ComputeSplit out;
    out.compute_share.assign(mu.size(), 0.0);
    if (!(lambda > 0.0)) return out;
    const double cap = system.edge_capacity_C;
    out.compute_tc = system.frame_T * lambda / (lambda + cap);
    for (std::size_t i = 0; i < mu.size(); ++i) out.compute_share[i] = cap * mu[i] / lambda;
    return out;
}

TdmaAllocation solve_tdma(const Scenario& scenario, const std::optional<OffloadingSequence>& seq) {
    validate(scenario);
    TdmaAllocation out;
    out.sequence = seq ? *seq : schedule_ascending_weighted_rate(scenario);
    const SlotCoefficients coeff = slot_data_coefficients(scenario, out.sequence);
    const ComputeSplit split = compute_split(coeff.lambda, coeff.mu, scenario.system);
    const SlotTimes times = closed_form_times(scenario, out.sequence, split.compute_tc);

    const std::size_t n = scenario.size();
    const double active = scenario.system.frame_T - split.compute_tc;
    out.sense_t1s = times.sense_t1s;
    out.slot_times = times.slot_times;
    out.compute_tc = split.compute_tc;
    out.compute_share.assign(n, 0.0);
    out.offloaded_bits.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t dev = out.sequence.slot_to_device[i];
        out.compute_share[dev] = split.compute_share[i];
        out.offloaded_bits[dev] = active * coeff.mu[i];
        out.weighted_throughput += scenario.devices[dev].weight_w * out.offloaded_bits[dev];
        out.sum_throughput += out.offloaded_bits[dev];
    }
    return out;
}

ExhaustiveResult exhaustive_sequence_search(const Scenario& scenario, std::size_t max_n) {
    const std::size_t n = scenario.size();
    if (n > max_n)
        throw ParameterError("exhaustive search refuses N = " + std::to_string(n) + " (cap " +
                             std::to_string(max_n) + ")");
    OffloadingSequence seq{identity(n)};
    ExhaustiveResult best{seq, solve_tdma(scenario, seq)};
    while (std::next_permutation(seq.slot_to_device.begin(), seq.slot_to_device.end())) {
        TdmaAllocation alloc = solve_tdma(scenario, seq);
        if (alloc.weighted_throughput > best.allocation.weighted_throughput) best = {seq, std::move(alloc)};
    }
    return best;
}

OffloadingSequence benchmark_sequence(const Scenario& scenario, BenchmarkKind kind, std::uint64_t seed) {
    std::vector<std::size_t> order = identity(scenario.size());
    switch (kind) {
        case BenchmarkKind::random: {
            std::mt19937_64 rng(seed);
            std::shuffle(order.begin(), order.end(), rng);
            break;
        }
        case BenchmarkKind::ascending_sensing:
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return scenario.devices[a].sensing_s < scenario.devices[b].sensing_s;
            });
            break;
        case BenchmarkKind::descending_rate: {
            const std::vector<double> r = link_rates(scenario);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
            break;
        }
    }
    return {order};
}

double s2_throughput(double s0, double r1, double r2, double w1, double w2, double active_time) {
    return s0 * active_time * ((w1 + w2) * r1 * r2 + s0 * w2 * r2) / ((s0 + r1) * (s0 + r2));
}

}  // namespace edgeoff::tdma
