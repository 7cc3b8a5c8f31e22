#include "edgeoff/fdma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "edgeoff/errors.hpp"
#include "edgeoff/lp.hpp"

namespace edgeoff::fdma {

namespace {

double snr(const Device& d, const SystemParams& sys) { return d.max_power_P * d.gain_h / sys.noise_N0; }

// Tangents at the pool abscissae; knot[k] ends the stretch where tangent k is
// the lowest, knot.back() = +inf. Slopes strictly decrease with k.
struct Envelope {
    std::vector<double> slope, intercept, knot;
};

Envelope envelope_of(const Device& d, const SystemParams& sys, const std::vector<double>& pts);

}  // namespace

double subband_rate(double alpha, const Device& device, const SystemParams& system) {
    if (alpha < 0.0 || alpha > 1.0 + 1e-12) throw ParameterError("bandwidth fraction must lie in [0, 1]");
    if (alpha == 0.0) return 0.0;
    return alpha * system.bandwidth_B * std::log1p(snr(device, system) / alpha) / std::numbers::ln2;
}

double subband_rate_slope(double alpha, const Device& device, const SystemParams& system) {
    const double q = snr(device, system) / alpha;
    return system.bandwidth_B * (std::log1p(q) - q / (1.0 + q)) / std::numbers::ln2;
}

std::vector<double> tangent_points(std::size_t count, double alpha_min) {
    if (count < 2) throw ParameterError("need at least two tangent points");
    if (!(alpha_min > 0.0 && alpha_min < 1.0)) throw ParameterError("alpha_min must lie in (0, 1)");
    std::vector<double> pts(count);
    const double step = -std::log(alpha_min) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) pts[k] = alpha_min * std::exp(step * static_cast<double>(k));
    pts.back() = 1.0;
    return pts;
}

namespace {

Envelope envelope_of(const Device& d, const SystemParams& sys, const std::vector<double>& pts) {
    Envelope e;
    const std::size_t k = pts.size();
    e.slope.resize(k);
    e.intercept.resize(k);
    e.knot.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        e.slope[j] = subband_rate_slope(pts[j], d, sys);
        e.intercept[j] = subband_rate(pts[j], d, sys) - pts[j] * e.slope[j];
    }
    for (std::size_t j = 0; j + 1 < k; ++j)
        e.knot[j] = (e.intercept[j + 1] - e.intercept[j]) / (e.slope[j] - e.slope[j + 1]);
    e.knot.back() = std::numeric_limits<double>::infinity();
    return e;
}

std::vector<Envelope> envelopes(const Scenario& sc, std::size_t count, double alpha_min) {
    const std::vector<double> pts = tangent_points(count, alpha_min);
    std::vector<Envelope> out;
    out.reserve(sc.size());
    for (const Device& d : sc.devices) out.push_back(envelope_of(d, sc.system, pts));
    return out;
}

double envelope_value(const Scenario& sc, const std::vector<Envelope>& env, double ts, double to) {
    if (ts <= 0.0 || to <= 0.0) return 0.0;
    struct Piece {
        double slope, width;
    };
    std::vector<Piece> pieces;
    double base = 0.0;
    for (std::size_t n = 0; n < sc.size(); ++n) {
        const Envelope& e = env[n];
        const double cap = ts * sc.devices[n].sensing_s;
        double cur = to * e.intercept[0];
        if (cur >= cap) {
            base += cap;
            continue;
        }
        base += cur;
        double left = 0.0;
        for (std::size_t j = 0; j < e.slope.size() && left < 1.0; ++j) {
            const double right = std::min(e.knot[j], 1.0);
            if (right <= left) continue;
            const double rate = to * e.slope[j];
            const double gain = rate * (right - left);
            if (cur + gain >= cap) {
                pieces.push_back({rate, (cap - cur) / rate});
                break;
            }
            pieces.push_back({rate, right - left});
            cur += gain;
            left = right;
        }
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.slope > b.slope; });
    double budget = 1.0;
    for (const Piece& p : pieces) {
        const double take = std::min(budget, p.width);
        base += p.slope * take;
        budget -= take;
        if (budget <= 0.0) break;
    }
    return base;
}

}  // namespace

double envelope_value(const Scenario& scenario, double sense_ts, double offload_to, std::size_t tangent_count,
                      double alpha_min) {
    return envelope_value(scenario, envelopes(scenario, tangent_count, alpha_min), sense_ts, offload_to);
}

InnerResult inner_value(const Scenario& scenario, const TimeSplit& times, std::size_t tangent_count, bool compute_row,
                        CutSet* warm, double alpha_min) {
    const std::size_t n = scenario.size();
    const SystemParams& sys = scenario.system;
    if (times.sense_ts < 0.0 || times.offload_to < 0.0 || times.compute_tc < 0.0 ||
        times.sense_ts + times.offload_to + times.compute_tc > sys.frame_T * (1 + 1e-12))
        throw ParameterError("time split must be nonnegative and fit in the frame");

    InnerResult out;
    out.alpha.assign(n, 0.0);
    out.bits_l.assign(n, 0.0);
    if (times.offload_to == 0.0 || times.sense_ts == 0.0 || (compute_row && times.compute_tc == 0.0)) return out;

    const std::vector<double> pts = tangent_points(tangent_count, alpha_min);
    const std::vector<Envelope> env = envelopes(scenario, tangent_count, alpha_min);

    CutSet local;
    CutSet& cuts = warm ? *warm : local;
    if (cuts.size() != n) {
        cuts.assign(n, {});
        const double share = 1.0 / static_cast<double>(n);
        const auto near = std::lower_bound(pts.begin(), pts.end(), share);
        const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(near - pts.begin()), pts.size() - 1);
        for (auto& c : cuts) c = {idx, pts.size() - 1};
    }

    using lp::Relation;
    const double to = times.offload_to;
    lp::LpSolution sol;
    while (true) {
        lp::LinearProgram p(2 * n);
        std::vector<std::pair<std::size_t, double>> terms;
        for (std::size_t k = 0; k < n; ++k) {
            p.objective[k] = 1.0;
            p.add_terms({{k, 1.0}}, Relation::less_equal, times.sense_ts * scenario.devices[k].sensing_s);
            terms.emplace_back(n + k, 1.0);
        }
        p.add_terms(terms, Relation::less_equal, 1.0);
        if (compute_row) {
            terms.clear();
            for (std::size_t k = 0; k < n; ++k) terms.emplace_back(k, 1.0);
            p.add_terms(terms, Relation::less_equal, times.compute_tc * sys.edge_capacity_C);
        }
        std::size_t count = 0;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j : cuts[k]) {
                p.add_terms({{k, 1.0}, {n + k, -to * env[k].slope[j]}}, Relation::less_equal,
                            to * env[k].intercept[j]);
                ++count;
            }
        sol = lp::solve(p);
        if (!sol.optimal()) throw SolverError("FDMA inner LP: " + std::string(lp::to_string(sol.status)));
        out.cuts = count;

        bool added = false;
        for (std::size_t k = 0; k < n; ++k) {
            const double l = sol.x[k];
            const double a = sol.x[n + k];
            std::size_t worst = pts.size();
            double worst_gap = 1e-12 * std::max(l, 1.0);
            for (std::size_t j = 0; j < pts.size(); ++j) {
                const double gap = l - to * (env[k].intercept[j] + env[k].slope[j] * a);
                if (gap > worst_gap) {
                    worst_gap = gap;
                    worst = j;
                }
            }
            if (worst < pts.size() && std::find(cuts[k].begin(), cuts[k].end(), worst) == cuts[k].end()) {
                cuts[k].push_back(worst);
                added = true;
            }
        }
        if (!added) break;
    }

    out.upper_bound = *sol.objective_value;
    // A degenerate optimum can leave band unused; g is increasing, so hand it
    // out pro rata (evenly when nothing was assigned).
    double used = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        out.alpha[k] = std::clamp(sol.x[n + k], 0.0, 1.0);
        used += out.alpha[k];
    }
    for (double& a : out.alpha) a = used > 0.0 ? a / used : 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double a = out.alpha[k];
        const double carried = to * subband_rate(a, scenario.devices[k], sys);
        out.bits_l[k] = std::min({sol.x[k], carried, times.sense_ts * scenario.devices[k].sensing_s});
        out.value += out.bits_l[k];
    }
    return out;
}

FdmaAllocation solve_fdma(const Scenario& scenario, const FdmaOptions& options) {
    validate(scenario);
    const SystemParams& sys = scenario.system;
    const double T = sys.frame_T;
    const double C = sys.edge_capacity_C;
    const std::size_t K = options.tangent_count;
    const std::vector<Envelope> env = envelopes(scenario, K, options.alpha_min);

    auto w = [&](double theta) {
        if (theta <= 0.0 || theta >= 1.0) return 0.0;
        return envelope_value(scenario, env, theta, 1.0 - theta);
    };

    // Seed grid on the open interval, then golden section around the best point.
    const std::size_t g = std::max<std::size_t>(options.seed_grid, 3);
    std::vector<double> theta(g), value(g);
    std::size_t best = 0;
    for (std::size_t i = 0; i < g; ++i) {
        theta[i] = (static_cast<double>(i) + 1.0) / (static_cast<double>(g) + 1.0);
        value[i] = w(theta[i]);
        if (value[i] > value[best]) best = i;
    }
    double lo = best == 0 ? 0.0 : theta[best - 1];
    double hi = best + 1 == g ? 1.0 : theta[best + 1];
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = w(x1), f2 = w(x2);
    while (hi - lo > options.time_resolution) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = w(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = w(x1);
        }
    }
    double th = theta[best];
    double wbest = value[best];
    if (f1 > wbest) {
        th = x1;
        wbest = f1;
    }
    if (f2 > wbest) {
        th = x2;
        wbest = f2;
    }

    FdmaAllocation out;
    const std::size_t n = scenario.size();
    out.alpha.assign(n, 0.0);
    out.compute_share.assign(n, 0.0);
    out.bits_l.assign(n, 0.0);
    if (!(wbest > 0.0)) return out;

    out.compute_tc = T * wbest / (C + wbest);
    const double active = T - out.compute_tc;
    out.sense_ts = th * active;
    out.offload_to = active - out.sense_ts;
    const InnerResult inner =
        inner_value(scenario, {out.sense_ts, out.offload_to, out.compute_tc}, K, true, nullptr, options.alpha_min);
    out.alpha = inner.alpha;
    out.bits_l = inner.bits_l;
    out.total = inner.value;
    out.upper_bound = inner.upper_bound;
    for (std::size_t k = 0; k < n; ++k) out.compute_share[k] = out.bits_l[k] / out.compute_tc;
    return out;
}

}  // namespace edgeoff::fdma
