#include "edgeoff/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include "edgeoff/errors.hpp"
#include "edgeoff/fdma.hpp"
#include "edgeoff/noma.hpp"
#include "edgeoff/noma_timesharing.hpp"
#include "edgeoff/tdma.hpp"
#include "edgeoff/tdma_async.hpp"

namespace edgeoff::harness {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 9> kSchemeNames{{
    {Scheme::tdma, "tdma"},
    {Scheme::tdma_exhaustive, "tdma_exhaustive"},
    {Scheme::tdma_random, "tdma_random"},
    {Scheme::tdma_asc_s, "tdma_asc_s"},
    {Scheme::tdma_desc_r, "tdma_desc_r"},
    {Scheme::tdma_async, "tdma_async"},
    {Scheme::noma_fixed, "noma_fixed"},
    {Scheme::noma_timesharing, "noma_timesharing"},
    {Scheme::fdma, "fdma"},
}};

constexpr std::array<std::pair<SweepKind, std::string_view>, 3> kSweepNames{{
    {SweepKind::device_count, "device_count"},
    {SweepKind::sensing_max, "sensing_max"},
    {SweepKind::capacity, "capacity"},
}};

std::size_t device_count_of(const ExperimentConfig& c, double sweep_value) {
    return c.sweep == SweepKind::device_count ? static_cast<std::size_t>(sweep_value) : c.device_count;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
    for (const auto& [s, name] : kSchemeNames)
        if (s == scheme) return name;
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (const auto& [s, n] : kSchemeNames)
        if (n == name) return s;
    return std::nullopt;
}

const std::vector<Scheme>& all_schemes() {
    static const std::vector<Scheme> all = [] {
        std::vector<Scheme> v;
        for (const auto& entry : kSchemeNames) v.push_back(entry.first);
        return v;
    }();
    return all;
}

std::string_view to_string(SweepKind kind) {
    for (const auto& [k, name] : kSweepNames)
        if (k == kind) return name;
    return "unknown";
}

std::optional<SweepKind> parse_sweep_kind(std::string_view name) {
    for (const auto& [k, n] : kSweepNames)
        if (n == name) return k;
    return std::nullopt;
}

void validate(const ExperimentConfig& c) {
    validate(c.base);
    if (c.trial_count < 1) throw ParameterError("trial_count must be at least 1");
    if (c.sweep_values.empty()) throw ParameterError("sweep list is empty");
    if (c.schemes.empty()) throw ParameterError("scheme list is empty");
    if (!(c.sensing.min > 0.0)) throw ParameterError("sensing minimum must be positive");
    for (double v : c.sweep_values) {
        if (!std::isfinite(v) || v <= 0.0) throw ParameterError("sweep values must be positive and finite");
        switch (c.sweep) {
            case SweepKind::device_count:
                if (v != std::floor(v)) throw ParameterError("device counts must be integers");
                break;
            case SweepKind::sensing_max:
                if (v < c.sensing.min) throw ParameterError("sensing maximum below the sensing minimum");
                break;
            case SweepKind::capacity:
                break;
        }
    }
    if (c.sweep != SweepKind::device_count && c.device_count < 1) throw ParameterError("device count must be >= 1");
    if (c.sweep != SweepKind::sensing_max && c.sensing.max < c.sensing.min)
        throw ParameterError("sensing range is inverted");
    if (c.equal_sensing && !(*c.equal_sensing > 0.0 && std::isfinite(*c.equal_sensing)))
        throw ParameterError("equal sensing rate must be positive");
    const bool timesharing = std::find(c.schemes.begin(), c.schemes.end(), Scheme::noma_timesharing) != c.schemes.end();
    if (timesharing && !c.equal_sensing) throw ParameterError("noma_timesharing requires equal sensing");
}

ExperimentConfig sweep_n_preset() {
    ExperimentConfig c;
    c.sweep = SweepKind::device_count;
    c.sweep_values = {4, 8, 12, 16, 20, 24};
    c.schemes = {Scheme::tdma,        Scheme::tdma_random, Scheme::tdma_asc_s, Scheme::tdma_desc_r,
                 Scheme::tdma_async,  Scheme::noma_fixed,  Scheme::fdma};
    return c;
}

ExperimentConfig sweep_sensing_preset() {
    ExperimentConfig c;
    c.sweep = SweepKind::sensing_max;
    c.sweep_values = {3e5, 8e5, 13e5, 18e5, 23e5};
    c.device_count = 8;
    c.schemes = {Scheme::tdma, Scheme::tdma_exhaustive, Scheme::tdma_random, Scheme::tdma_asc_s,
                 Scheme::tdma_desc_r};
    return c;
}

ExperimentConfig sweep_capacity_preset() {
    ExperimentConfig c;
    c.sweep = SweepKind::capacity;
    c.sweep_values = {0.25e7, 0.5e7, 1e7, 2e7, 4e7};
    c.device_count = 12;
    c.schemes = {Scheme::tdma,       Scheme::tdma_random, Scheme::tdma_asc_s, Scheme::tdma_desc_r,
                 Scheme::tdma_async, Scheme::noma_fixed,  Scheme::fdma};
    return c;
}

ExperimentConfig fairness_preset() {
    ExperimentConfig c = sweep_n_preset();
    c.schemes = {Scheme::tdma, Scheme::noma_fixed, Scheme::fdma};
    return c;
}

std::optional<double> jain_index(std::span<const double> bits) {
    double sum = 0.0, sq = 0.0;
    for (double b : bits) {
        if (b < 0.0 || !std::isfinite(b)) throw ParameterError("per-device throughput must be finite and nonnegative");
        sum += b;
        sq += b * b;
    }
    if (!(sum > 0.0)) return std::nullopt;
    return std::min(1.0, sum * sum / (static_cast<double>(bits.size()) * sq));
}

SchemeResult run_scheme(Scheme scheme, const Scenario& sc, std::uint64_t seed) {
    auto from_tdma = [](const tdma::TdmaAllocation& a) { return SchemeResult{a.sum_throughput, a.offloaded_bits}; };
    switch (scheme) {
        case Scheme::tdma:
            return from_tdma(tdma::solve_tdma(sc));
        case Scheme::tdma_exhaustive:
            return from_tdma(tdma::exhaustive_sequence_search(sc, kExhaustiveLimit).allocation);
        case Scheme::tdma_random:
            return from_tdma(tdma::solve_tdma(sc, tdma::benchmark_sequence(sc, tdma::BenchmarkKind::random, seed)));
        case Scheme::tdma_asc_s:
            return from_tdma(
                tdma::solve_tdma(sc, tdma::benchmark_sequence(sc, tdma::BenchmarkKind::ascending_sensing)));
        case Scheme::tdma_desc_r:
            return from_tdma(tdma::solve_tdma(sc, tdma::benchmark_sequence(sc, tdma::BenchmarkKind::descending_rate)));
        case Scheme::tdma_async: {
            const auto a = tdma_async::solve_async(sc);
            return {a.sum_throughput, a.offloaded_bits};
        }
        case Scheme::noma_fixed: {
            const auto a = noma::solve_noma(sc);
            return {a.throughput, a.offloaded_bits};
        }
        case Scheme::noma_timesharing: {
            const auto a = noma_timesharing::solve_timesharing(sc);
            return {a.throughput, a.offloaded_bits};
        }
        case Scheme::fdma: {
            const auto a = fdma::solve_fdma(sc);
            return {a.total, a.bits_l};
        }
    }
    throw ParameterError("unknown scheme");
}

std::uint64_t trial_seed(const ExperimentConfig& c, double sweep_value, std::size_t trial) {
    return derive_seed(c.seed, std::bit_cast<std::uint64_t>(sweep_value), trial);
}

Scenario trial_scenario(const ExperimentConfig& c, double sweep_value, std::uint64_t seed) {
    SystemParams params = c.base;
    SensingRange sensing = c.sensing;
    if (c.sweep == SweepKind::capacity) params.edge_capacity_C = sweep_value;
    if (c.sweep == SweepKind::sensing_max) sensing.max = sweep_value;
    Scenario sc = generate_scenario(params, device_count_of(c, sweep_value), sensing, seed);
    if (c.equal_sensing) sc = with_equal_sensing(std::move(sc), *c.equal_sensing);
    return sc;
}

std::vector<ExperimentRow> run_sweep(const ExperimentConfig& c, std::ostream* log) {
    validate(c);
    struct Task {
        double value;
        std::size_t trial;
    };
    std::vector<Task> tasks;
    for (double v : c.sweep_values) {
        const bool skip = device_count_of(c, v) > kExhaustiveLimit &&
                          std::find(c.schemes.begin(), c.schemes.end(), Scheme::tdma_exhaustive) != c.schemes.end();
        if (skip && log)
            *log << "notice: tdma_exhaustive skipped at " << to_string(c.sweep) << "=" << v << " (N > "
                 << kExhaustiveLimit << ")\n";
        for (std::size_t t = 0; t < c.trial_count; ++t) tasks.push_back({v, t});
    }

    std::vector<std::vector<ExperimentRow>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const Task& task = tasks[i];
            const std::uint64_t seed = trial_seed(c, task.value, task.trial);
            const Scenario sc = trial_scenario(c, task.value, seed);
            for (Scheme s : c.schemes) {
                if (s == Scheme::tdma_exhaustive && sc.size() > kExhaustiveLimit) continue;
                ExperimentRow row;
                row.scheme = s;
                row.sweep_value = task.value;
                row.trial = task.trial;
                row.seed_used = seed;
                const auto start = std::chrono::steady_clock::now();
                try {
                    const SchemeResult r = run_scheme(s, sc, derive_seed(seed, 1));
                    row.sum_throughput_bits = r.sum_throughput;
                    row.jfi = jain_index(r.per_device_bits);
                } catch (const std::exception& e) {
                    row.failed = true;
                    row.error = e.what();
                    row.sum_throughput_bits = 0.0;
                    row.jfi.reset();
                }
                row.runtime_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                results[i].push_back(std::move(row));
            }
        }
    };
    std::size_t workers = c.workers ? c.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, tasks.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::vector<ExperimentRow> rows;
    for (auto& r : results)
        for (auto& row : r) rows.push_back(std::move(row));
    std::sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
        return std::tie(a.scheme, a.sweep_value, a.trial) < std::tie(b.scheme, b.sweep_value, b.trial);
    });
    return rows;
}

std::vector<SummaryCell> summarize(std::span<const ExperimentRow> rows) {
    if (rows.empty()) throw ParameterError("nothing to summarize");
    // Cells are keyed and their rows ordered by trial so the sums do not
    // depend on the input order.
    std::map<std::pair<Scheme, double>, std::vector<const ExperimentRow*>> cells;
    for (const ExperimentRow& r : rows) cells[{r.scheme, r.sweep_value}].push_back(&r);
    std::vector<SummaryCell> out;
    for (auto& [key, members] : cells) {
        std::sort(members.begin(), members.end(), [](const ExperimentRow* a, const ExperimentRow* b) {
            return std::tie(a->trial, a->seed_used, a->sum_throughput_bits) <
                   std::tie(b->trial, b->seed_used, b->sum_throughput_bits);
        });
        SummaryCell cell;
        cell.scheme = key.first;
        cell.sweep_value = key.second;
        cell.rows = members.size();
        double throughput = 0.0, jfi = 0.0;
        std::size_t ok = 0, with_jfi = 0;
        for (const ExperimentRow* r : members) {
            if (r->failed) {
                ++cell.failures;
                continue;
            }
            throughput += r->sum_throughput_bits;
            ++ok;
            if (r->jfi) {
                jfi += *r->jfi;
                ++with_jfi;
            }
        }
        if (ok) cell.mean_throughput = throughput / static_cast<double>(ok);
        if (with_jfi) cell.mean_jfi = jfi / static_cast<double>(with_jfi);
        out.push_back(cell);
    }
    return out;
}

void write_csv(std::ostream& out, std::span<const ExperimentRow> rows, bool timing) {
    out << "scheme,sweep_value,trial,sum_throughput_bits,jfi,runtime_ms,seed_used,failed\n";
    for (const ExperimentRow& r : rows) {
        out << to_string(r.scheme) << ',' << format_double(r.sweep_value) << ',' << r.trial << ','
            << format_double(r.sum_throughput_bits) << ',' << (r.jfi ? format_double(*r.jfi) : "") << ','
            << (timing ? format_double(r.runtime_ms) : "0") << ',' << r.seed_used << ',' << (r.failed ? 1 : 0)
            << '\n';
    }
}

void write_summary(std::ostream& out, std::span<const SummaryCell> cells) {
    char line[160];
    std::snprintf(line, sizeof line, "%-17s %12s %6s %6s %16s %8s\n", "scheme", "sweep_value", "rows", "failed",
                  "mean_bits", "mean_jfi");
    out << line;
    for (const SummaryCell& c : cells) {
        const std::string mean = c.mean_throughput ? format_double(std::round(*c.mean_throughput)) : "unavailable";
        char jfi[32] = "n/a";
        if (c.mean_jfi) std::snprintf(jfi, sizeof jfi, "%.4f", *c.mean_jfi);
        std::snprintf(line, sizeof line, "%-17s %12g %6zu %6zu %16s %8s\n", std::string(to_string(c.scheme)).c_str(),
                      c.sweep_value, c.rows, c.failures, mean.c_str(), jfi);
        out << line;
    }
}

}  // namespace edgeoff::harness
