#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgeoff/scenario.hpp"

namespace edgeoff::harness {

enum class Scheme {
    tdma,
    tdma_exhaustive,
    tdma_random,
    tdma_asc_s,
    tdma_desc_r,
    tdma_async,
    noma_fixed,
    noma_timesharing,
    fdma,
};

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);
const std::vector<Scheme>& all_schemes();

/// Which scenario parameter a sweep value sets.
enum class SweepKind { device_count, sensing_max, capacity };

std::string_view to_string(SweepKind kind);
std::optional<SweepKind> parse_sweep_kind(std::string_view name);

/// Largest N for which tdma_exhaustive runs; larger cells are skipped.
inline constexpr std::size_t kExhaustiveLimit = 8;

struct ExperimentConfig {
    SystemParams base;
    std::size_t trial_count = 500;
    std::uint64_t seed = 1;
    SweepKind sweep = SweepKind::device_count;
    std::vector<double> sweep_values;
    std::vector<Scheme> schemes;
    std::optional<double> equal_sensing;  // bits/s shared by every device
    std::size_t device_count = 8;         // N when the sweep is not over N
    SensingRange sensing;                 // max is replaced by a sensing_max sweep value
    std::size_t workers = 0;              // 0: one per hardware thread
};

/// trial_count >= 1, nonempty sweep and scheme lists, sweep values usable for
/// their kind, and noma_timesharing only with equal sensing.
void validate(const ExperimentConfig& config);

/// Figure presets: N in 4..24, s_max in {3..23}e5 at N = 8, C in {0.25..4}e7 at N = 12.
ExperimentConfig sweep_n_preset();
ExperimentConfig sweep_sensing_preset();
ExperimentConfig sweep_capacity_preset();
ExperimentConfig fairness_preset();

struct ExperimentRow {
    Scheme scheme = Scheme::tdma;
    double sweep_value = 0.0;
    std::size_t trial = 0;
    double sum_throughput_bits = 0.0;
    std::optional<double> jfi;
    double runtime_ms = 0.0;
    std::uint64_t seed_used = 0;
    bool failed = false;
    std::string error;
};

/// (sum R)^2 / (N sum R^2); empty when no entry is positive.
std::optional<double> jain_index(std::span<const double> per_device_bits);

struct SchemeResult {
    double sum_throughput = 0.0;
    std::vector<double> per_device_bits;  // by device id
};

/// Runs one scheme; `seed` feeds the random-sequence benchmark only.
SchemeResult run_scheme(Scheme scheme, const Scenario& scenario, std::uint64_t seed);

/// Seed for (sweep value, trial): derive_seed(seed, bits of sweep_value, trial).
std::uint64_t trial_seed(const ExperimentConfig& config, double sweep_value, std::size_t trial);
Scenario trial_scenario(const ExperimentConfig& config, double sweep_value, std::uint64_t seed);

/// Every (sweep value, trial) on a worker pool; all schemes of a trial share
/// one scenario. Solver failures become failed rows. Rows are sorted by
/// (scheme, sweep_value, trial). Skip notices go to `log` when given.
std::vector<ExperimentRow> run_sweep(const ExperimentConfig& config, std::ostream* log = nullptr);

struct SummaryCell {
    Scheme scheme = Scheme::tdma;
    double sweep_value = 0.0;
    std::size_t rows = 0;
    std::size_t failures = 0;
    std::optional<double> mean_throughput;  // empty when every row failed
    std::optional<double> mean_jfi;
};

/// Means over non-failed rows per (scheme, sweep_value); independent of row order.
std::vector<SummaryCell> summarize(std::span<const ExperimentRow> rows);

/// Header plus one line per row. With timing off, runtime_ms is written as 0
/// so repeated runs are byte-identical.
void write_csv(std::ostream& out, std::span<const ExperimentRow> rows, bool timing = true);
void write_summary(std::ostream& out, std::span<const SummaryCell> cells);

}  // namespace edgeoff::harness
