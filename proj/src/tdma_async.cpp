#include "edgeoff/tdma_async.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "edgeoff/errors.hpp"

namespace edgeoff::tdma_async {

namespace {

using lp::Relation;

void add_causality_rows(lp::LinearProgram& p, const Scenario& sc, const tdma::OffloadingSequence& seq,
                        const std::vector<double>& rates) {
    const std::size_t n = seq.size();
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t k = 0; k < n + 2; ++k) terms.emplace_back(k, 1.0);
    p.add_terms(terms, Relation::less_equal, sc.system.frame_T);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t dev = seq.slot_to_device[i];
        terms.assign(1, {i + 1, rates[dev]});
        for (std::size_t k = 0; k <= i; ++k) terms.emplace_back(k, -sc.devices[dev].sensing_s);
        p.add_terms(terms, Relation::less_equal, 0.0);
    }
}

void set_objective(lp::LinearProgram& p, const Scenario& sc, const tdma::OffloadingSequence& seq,
                   const std::vector<double>& rates) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const std::size_t dev = seq.slot_to_device[i];
        p.objective[i + 1] = sc.devices[dev].weight_w * rates[dev];
    }
}

lp::LpSolution solve_stage(const lp::LinearProgram& p, const char* stage) {
    lp::LpSolution sol = lp::solve(p);
    if (!sol.optimal())
        throw SolverError(std::string("asynchronous TDMA ") + stage + " LP: " + std::string(lp::to_string(sol.status)));
    return sol;
}

}  // namespace

lp::LinearProgram build_relaxed_lp(const Scenario& scenario, const tdma::OffloadingSequence& seq) {
    validate(scenario);
    tdma::validate(seq, scenario.size());
    const std::vector<double> rates = link_rates(scenario);
    const RelaxedLayout L{scenario.size()};
    const double T = scenario.system.frame_T;
    const double C = scenario.system.edge_capacity_C;

    lp::LinearProgram p(L.size());
    set_objective(p, scenario, seq, rates);
    add_causality_rows(p, scenario, seq, rates);
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t i = 0; i < L.n; ++i) {
        const std::size_t dev = seq.slot_to_device[i];
        p.add_terms({{L.time(i + 1), rates[dev]}, {L.product(i), -1.0}}, Relation::less_equal, 0.0);

        // later = sum_{k > i} t_k over times i+2 .. N+1
        auto with_later = [&](double later_coeff, std::vector<std::pair<std::size_t, double>> base) {
            for (std::size_t k = i + 2; k < L.n + 2; ++k) base.emplace_back(L.time(k), later_coeff);
            return base;
        };
        p.add_terms(with_later(-C, {{L.product(i), 1.0}, {L.share(i), -T}}), Relation::greater_equal, -C * T);
        p.add_terms(with_later(-C, {{L.product(i), 1.0}}), Relation::less_equal, 0.0);
        p.add_terms({{L.product(i), 1.0}, {L.share(i), -T}}, Relation::less_equal, 0.0);
    }
    terms.clear();
    for (std::size_t i = 0; i < L.n; ++i) terms.emplace_back(L.share(i), 1.0);
    p.add_terms(terms, Relation::less_equal, C);
    return p;
}

lp::LinearProgram build_residual_lp(const Scenario& scenario, const tdma::OffloadingSequence& seq,
                                    std::span<const double> shares) {
    const std::size_t n = scenario.size();
    tdma::validate(seq, n);
    if (shares.size() != n) throw ParameterError("share vector length does not match device count");
    const std::vector<double> rates = link_rates(scenario);
    lp::LinearProgram p(n + 2);
    set_objective(p, scenario, seq, rates);
    add_causality_rows(p, scenario, seq, rates);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<std::size_t, double>> terms{{i + 1, rates[seq.slot_to_device[i]]}};
        for (std::size_t k = i + 2; k < n + 2; ++k) terms.emplace_back(k, -shares[i]);
        p.add_terms(terms, Relation::less_equal, 0.0);
    }
    return p;
}

AsyncAllocation solve_async(const Scenario& scenario, const std::optional<tdma::OffloadingSequence>& seq,
                            const AsyncOptions& options) {
    validate(scenario);
    const std::size_t n = scenario.size();
    const double C = scenario.system.edge_capacity_C;
    AsyncAllocation out;
    out.sequence = seq ? *seq : tdma::schedule_ascending_weighted_rate(scenario);
    const RelaxedLayout L{n};

    const lp::LpSolution relaxed = solve_stage(build_relaxed_lp(scenario, out.sequence), "relaxed");
    out.relaxation_bound = *relaxed.objective_value;

    std::vector<double> shares(n);
    const double floor = options.share_floor * C;
    for (std::size_t i = 0; i < n; ++i) {
        shares[i] = std::max(relaxed.x[L.share(i)], 0.0);
        if (shares[i] < floor) {
            shares[i] = floor;
            out.share_floor_applied = true;
        }
    }
    const double total = std::accumulate(shares.begin(), shares.end(), 0.0);
    for (double& c : shares) c *= C / total;

    lp::LpSolution residual = solve_stage(build_residual_lp(scenario, out.sequence, shares), "residual");

    if (options.synchronous_fallback) {
        const tdma::SlotCoefficients coeff = tdma::slot_data_coefficients(scenario, out.sequence);
        const tdma::ComputeSplit sync = tdma::compute_split(coeff.lambda, coeff.mu, scenario.system);
        if (coeff.lambda > 0.0) {
            lp::LpSolution alt = solve_stage(build_residual_lp(scenario, out.sequence, sync.compute_share), "residual");
            if (*alt.objective_value > *residual.objective_value) {
                residual = std::move(alt);
                shares = sync.compute_share;
                out.used_synchronous_shares = true;
            }
        }
    }

    const std::vector<double> rates = link_rates(scenario);
    out.times.assign(residual.x.begin(), residual.x.end());
    for (double& t : out.times) t = std::max(t, 0.0);
    out.compute_share.assign(n, 0.0);
    out.offloaded_bits.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t dev = out.sequence.slot_to_device[i];
        out.compute_share[dev] = shares[i];
        out.offloaded_bits[dev] = rates[dev] * out.times[i + 1];
        out.sum_throughput += out.offloaded_bits[dev];
        out.weighted_throughput += scenario.devices[dev].weight_w * out.offloaded_bits[dev];
    }
    return out;
}

}  // namespace edgeoff::tdma_async
