#pragma once

#include <optional>
#include <span>
#include <vector>

#include "edgeoff/lp.hpp"
#include "edgeoff/scenario.hpp"
#include "edgeoff/tdma.hpp"

namespace edgeoff::tdma_async {

/// times[0] is the initial sensing period, times[i] (1 <= i <= N) the pure
/// offloading time of slot i, times[N + 1] the trailing compute period.
struct AsyncAllocation {
    tdma::OffloadingSequence sequence;
    std::vector<double> times;
    std::vector<double> compute_share;   // by device id
    std::vector<double> offloaded_bits;  // by device id
    double weighted_throughput = 0.0;
    double sum_throughput = 0.0;
    double relaxation_bound = 0.0;
    bool share_floor_applied = false;
    /// Set when the synchronous shares gave a better residual LP than the relaxed ones.
    bool used_synchronous_shares = false;
};

struct AsyncOptions {
    double share_floor = 1e-6;  // fraction of C
    bool synchronous_fallback = true;
};

/// Column layout of the relaxed program.
struct RelaxedLayout {
    std::size_t n = 0;
    std::size_t time(std::size_t k) const { return k; }            // k in 0..N+1
    std::size_t share(std::size_t i) const { return n + 2 + i; }   // slot i in 0..N-1
    std::size_t product(std::size_t i) const { return 2 * n + 2 + i; }
    std::size_t size() const { return 3 * n + 2; }
};

/// Relaxed program: the bilinear compute deadlines r t_i <= C_i sum_{k>i} t_k are
/// replaced by r t_i <= l_i and the McCormick envelope of l_i = C_i * sum_{k>i} t_k
/// over C_i in [0, C], sum_{k>i} t_k in [0, T].
lp::LinearProgram build_relaxed_lp(const Scenario& scenario, const tdma::OffloadingSequence& seq);

/// Time-only program with the compute shares fixed (slot order).
lp::LinearProgram build_residual_lp(const Scenario& scenario, const tdma::OffloadingSequence& seq,
                                    std::span<const double> shares);

AsyncAllocation solve_async(const Scenario& scenario,
                            const std::optional<tdma::OffloadingSequence>& seq = std::nullopt,
                            const AsyncOptions& options = {});

}  // namespace edgeoff::tdma_async
