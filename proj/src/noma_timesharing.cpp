#include "edgeoff/noma_timesharing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "edgeoff/errors.hpp"
#include "edgeoff/noma.hpp"

namespace edgeoff::noma_timesharing {

namespace {

using lp::Relation;

void check_order(const SicOrder& order, std::size_t n) {
    if (order.decode_position.size() != n) throw ParameterError("SIC order length does not match device count");
    std::vector<bool> seen(n, false);
    for (std::size_t p : order.decode_position) {
        if (p >= n || seen[p]) throw ParameterError("SIC order is not a permutation");
        seen[p] = true;
    }
}

double lp_value(const Scenario& sc, const std::vector<SicOrder>& orders, lp::LpSolution* keep = nullptr) {
    lp::LpSolution sol = lp::solve(build_p21_lp(sc, orders));
    if (!sol.optimal()) throw SolverError("time-sharing LP: " + std::string(lp::to_string(sol.status)));
    const double v = *sol.objective_value;
    if (keep) *keep = std::move(sol);
    return v;
}

double closed_form(const Scenario& sc, double received_over_noise) {
    const double s0 = common_sensing_rate(sc);
    const SystemParams& sys = sc.system;
    const double n_s0 = static_cast<double>(sc.size()) * s0;
    const double sum_rate = sys.bandwidth_B * std::log1p(received_over_noise) / std::numbers::ln2;
    return n_s0 * sys.frame_T / (1.0 + n_s0 / sum_rate + n_s0 / sys.edge_capacity_C);
}

}  // namespace

SicOrder SicOrder::from_sequence(const std::vector<std::size_t>& sequence) {
    SicOrder order;
    order.decode_position.assign(sequence.size(), sequence.size());
    for (std::size_t pos = 0; pos < sequence.size(); ++pos) {
        if (sequence[pos] >= sequence.size()) throw ParameterError("SIC sequence entry out of range");
        order.decode_position[sequence[pos]] = pos;
    }
    check_order(order, sequence.size());
    return order;
}

std::vector<std::size_t> SicOrder::sequence() const {
    std::vector<std::size_t> seq(decode_position.size());
    for (std::size_t n = 0; n < decode_position.size(); ++n) seq[decode_position[n]] = n;
    return seq;
}

std::vector<std::vector<double>> rate_matrix(const Scenario& scenario, const std::vector<SicOrder>& orders) {
    const std::size_t n = scenario.size();
    const SystemParams& sys = scenario.system;
    std::vector<std::vector<double>> r(n, std::vector<double>(orders.size(), 0.0));
    for (std::size_t m = 0; m < orders.size(); ++m) {
        check_order(orders[m], n);
        const std::vector<std::size_t> seq = orders[m].sequence();
        double interference = 0.0;
        for (std::size_t pos = n; pos-- > 0;) {
            const Device& d = scenario.devices[seq[pos]];
            const double rx = d.max_power_P * d.gain_h;
            r[seq[pos]][m] = sys.bandwidth_B * std::log1p(rx / (sys.noise_N0 + interference)) / std::numbers::ln2;
            interference += rx;
        }
    }
    return r;
}

double common_sensing_rate(const Scenario& scenario) {
    validate(scenario);
    const double s0 = scenario.devices[0].sensing_s;
    for (const Device& d : scenario.devices)
        if (std::abs(d.sensing_s - s0) > 1e-12 * s0)
            throw ParameterError("time sharing requires identical sensing rates");
    return s0;
}

lp::LinearProgram build_p21_lp(const Scenario& scenario, const std::vector<SicOrder>& orders, ComputeRow compute_row) {
    const double s0 = common_sensing_rate(scenario);
    if (orders.empty()) throw ParameterError("time sharing needs at least one SIC order");
    const std::size_t n = scenario.size();
    const std::size_t m_count = orders.size();
    const auto r = rate_matrix(scenario, orders);
    const std::size_t ts = 0, tc = 1, y0 = 2, z0 = 2 + m_count;

    lp::LinearProgram p(2 + m_count + n);
    p.objective[ts] = static_cast<double>(n) * s0;

    std::vector<std::pair<std::size_t, double>> terms{{ts, 1.0}, {tc, 1.0}};
    for (std::size_t m = 0; m < m_count; ++m) terms.emplace_back(y0 + m, 1.0);
    p.add_terms(terms, Relation::less_equal, scenario.system.frame_T);

    for (std::size_t k = 0; k < n; ++k) {
        terms.assign(1, {ts, s0});
        for (std::size_t m = 0; m < m_count; ++m) terms.emplace_back(y0 + m, -r[k][m]);
        p.add_terms(terms, Relation::less_equal, 0.0);
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (compute_row == ComputeRow::sensed_data) {
            terms.assign(1, {ts, s0});
        } else {
            terms.clear();
            for (std::size_t m = 0; m < m_count; ++m) terms.emplace_back(y0 + m, r[k][m]);
        }
        terms.emplace_back(z0 + k, -1.0);
        p.add_terms(terms, Relation::less_equal, 0.0);
    }
    terms.assign(1, {tc, -scenario.system.edge_capacity_C});
    for (std::size_t k = 0; k < n; ++k) terms.emplace_back(z0 + k, 1.0);
    p.add_terms(terms, Relation::less_equal, 0.0);
    return p;
}

std::vector<SicOrder> greedy_sic_set(const Scenario& scenario, const GreedyOptions& options) {
    common_sensing_rate(scenario);
    const std::size_t n = scenario.size();
    const std::size_t max_orders = options.max_orders ? options.max_orders : 2 * n;
    std::vector<SicOrder> set{SicOrder::from_sequence(noma::decode_order(scenario))};
    lp::LpSolution sol;
    double value = lp_value(scenario, set, &sol);

    auto contains = [&](const SicOrder& o) { return std::find(set.begin(), set.end(), o) != set.end(); };
    auto improves = [&](double candidate) { return candidate - value > options.min_improvement * std::max(value, 1e-300); };

    while (set.size() < max_orders) {
        if (n <= options.exhaustive_limit) {
            std::vector<std::size_t> seq(n);
            std::iota(seq.begin(), seq.end(), std::size_t{0});
            std::optional<SicOrder> best;
            double best_value = value;
            do {
                SicOrder cand = SicOrder::from_sequence(seq);
                if (contains(cand)) continue;
                set.push_back(cand);
                const double v = lp_value(scenario, set);
                set.pop_back();
                if (v > best_value) {
                    best_value = v;
                    best = std::move(cand);
                }
            } while (std::next_permutation(seq.begin(), seq.end()));
            if (!best || !improves(best_value)) break;
            set.push_back(*best);
            value = best_value;
        } else {
            // Dual weight of each device's sensing row (rows 1..N).
            std::vector<double> w(n);
            for (std::size_t k = 0; k < n; ++k) w[k] = std::max(sol.duals[1 + k], 0.0);
            std::vector<std::size_t> seq(n);
            std::iota(seq.begin(), seq.end(), std::size_t{0});
            std::stable_sort(seq.begin(), seq.end(), [&](std::size_t a, std::size_t b) {
                if (w[a] != w[b]) return w[a] < w[b];
                return scenario.devices[a].gain_h > scenario.devices[b].gain_h;
            });
            SicOrder cand = SicOrder::from_sequence(seq);
            if (contains(cand)) break;
            set.push_back(cand);
            lp::LpSolution next;
            const double v = lp_value(scenario, set, &next);
            if (!improves(v)) {
                set.pop_back();
                break;
            }
            value = v;
            sol = std::move(next);
        }
    }
    return set;
}

TimeSharingAllocation solve_timesharing(const Scenario& scenario, const std::optional<std::vector<SicOrder>>& orders,
                                        ComputeRow compute_row) {
    const double s0 = common_sensing_rate(scenario);
    const std::size_t n = scenario.size();
    TimeSharingAllocation out;
    out.orders = orders ? *orders : greedy_sic_set(scenario);
    const lp::LpSolution sol = lp::solve(build_p21_lp(scenario, out.orders, compute_row));
    if (!sol.optimal()) throw SolverError("time-sharing LP: " + std::string(lp::to_string(sol.status)));

    const std::size_t m_count = out.orders.size();
    out.sense_ts = sol.x[0];
    out.compute_tc = sol.x[1];
    out.offload_to = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) out.offload_to += sol.x[2 + m];
    out.fractions.assign(m_count, 0.0);
    if (out.offload_to > 0.0) {
        for (std::size_t m = 0; m < m_count; ++m) out.fractions[m] = sol.x[2 + m] / out.offload_to;
    } else {
        out.fractions[0] = 1.0;
    }
    out.compute_share.assign(n, scenario.system.edge_capacity_C / static_cast<double>(n));
    if (out.compute_tc > 0.0)
        for (std::size_t k = 0; k < n; ++k) out.compute_share[k] = sol.x[2 + m_count + k] / out.compute_tc;
    out.offloaded_bits.assign(n, s0 * out.sense_ts);
    out.throughput = static_cast<double>(n) * s0 * out.sense_ts;
    return out;
}

double closed_form_fixed(const Scenario& scenario) {
    common_sensing_rate(scenario);
    const noma::NomaAllocation fixed = noma::solve_noma(scenario);
    double rx = 0.0;
    for (std::size_t k = 0; k < scenario.size(); ++k) rx += fixed.power[k] * scenario.devices[k].gain_h;
    return closed_form(scenario, rx / scenario.system.noise_N0);
}

double closed_form_sharing_prime(const Scenario& scenario) {
    common_sensing_rate(scenario);
    double rx = 0.0;
    for (const Device& d : scenario.devices) rx += d.max_power_P * d.gain_h;
    return closed_form(scenario, rx / scenario.system.noise_N0);
}

}  // namespace edgeoff::noma_timesharing
