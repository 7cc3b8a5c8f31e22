#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edgeoff/scenario.hpp"

namespace edgeoff::tdma {

/// slot_to_device[i] is the device offloading in slot i + 1.
struct OffloadingSequence {
    std::vector<std::size_t> slot_to_device;

    std::size_t size() const { return slot_to_device.size(); }
    bool operator==(const OffloadingSequence&) const = default;
};

/// Throws ParameterError unless `seq` is a permutation of 0..n-1.
void validate(const OffloadingSequence& seq, std::size_t n);

struct SlotTimes {
    double sense_t1s = 0.0;          // sensing part of slot 1
    std::vector<double> slot_times;  // full slot lengths, slot order
};

struct SlotCoefficients {
    std::vector<double> mu;  // bits/s per unit of (T - t^c), slot order
    double lambda = 0.0;     // sum of mu
};

struct ComputeSplit {
    double compute_tc = 0.0;
    std::vector<double> compute_share;  // aligned with the mu passed in
};

struct TdmaAllocation {
    OffloadingSequence sequence;
    double sense_t1s = 0.0;
    std::vector<double> slot_times;
    double compute_tc = 0.0;
    std::vector<double> compute_share;   // by device id
    std::vector<double> offloaded_bits;  // by device id
    double weighted_throughput = 0.0;
    double sum_throughput = 0.0;
};

/// Slot i gets the device with the i-th smallest w_n * r_n; ties go to the lower id.
OffloadingSequence schedule_ascending_weighted_rate(const Scenario& scenario);

/// Extreme-point split of T - t^c where every causality constraint and the
/// frame budget are active. Empty products are 1, so N = 1 gives
/// t_1^s = (T - t^c) r / (s + r) and t_1 = T - t^c.
SlotTimes closed_form_times(const Scenario& scenario, const OffloadingSequence& seq, double compute_tc);

/// mu_i = s_{n_i} * prod_{j>=i} r_{n_j} / prod_{j>=i} (s_{n_j} + r_{n_j}).
SlotCoefficients slot_data_coefficients(const Scenario& scenario, const OffloadingSequence& seq);

/// Min-max compute allocation: t^c = T lambda / (lambda + C), C_i = C mu_i / lambda.
/// lambda == 0 yields t^c = 0 and zero shares.
ComputeSplit compute_split(double lambda, std::span<const double> mu, const SystemParams& system);

/// Algorithm for the synchronous scheme: sequence (ascending w r unless given),
/// compute split, then the closed-form times.
TdmaAllocation solve_tdma(const Scenario& scenario, const std::optional<OffloadingSequence>& seq = std::nullopt);

struct ExhaustiveResult {
    OffloadingSequence best;
    TdmaAllocation allocation;
};

/// Evaluates solve_tdma on all N! sequences in lexicographic order and keeps
/// the first maximizer. Refuses N > max_n.
ExhaustiveResult exhaustive_sequence_search(const Scenario& scenario, std::size_t max_n = 9);

enum class BenchmarkKind { random, ascending_sensing, descending_rate };

OffloadingSequence benchmark_sequence(const Scenario& scenario, BenchmarkKind kind, std::uint64_t seed = 0);

/// Two-device throughput with a common sensing rate s0, written out directly:
/// s0 (T - t^c) [(w1 + w2) r1 r2 + s0 w2 r2] / ((s0 + r1)(s0 + r2)),
/// where index 1 offloads first.
double s2_throughput(double s0, double r1, double r2, double w1, double w2, double active_time);

}  // namespace edgeoff::tdma
