#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgeoff/errors.hpp"
#include "edgeoff/harness.hpp"
#include "edgeoff/json_io.hpp"

using namespace edgeoff;
using namespace edgeoff::harness;

namespace {

struct SweepFlags {
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> schemes;
    std::optional<double> equal_sensing;
    std::string out;
    std::string config;
    std::optional<std::size_t> workers;
    std::vector<double> values;
    std::optional<std::size_t> devices;
    bool no_timing = false;
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
    cmd->add_option("--trials", f.trials, "Monte Carlo trials per sweep value");
    cmd->add_option("--seed", f.seed, "base seed");
    cmd->add_option("--schemes", f.schemes, "comma-separated scheme names")->delimiter(',');
    cmd->add_option("--equal-sensing", f.equal_sensing, "common sensing rate in bits/s");
    cmd->add_option("--out", f.out, "CSV output path");
    cmd->add_option("--config", f.config, "JSON config; its keys override flags");
    cmd->add_option("--workers", f.workers, "worker threads (0: all cores)");
    cmd->add_option("--values", f.values, "sweep values replacing the preset grid")->delimiter(',');
    cmd->add_option("--devices", f.devices, "device count for sensing and capacity sweeps");
    cmd->add_flag("--no-timing", f.no_timing, "write runtime_ms as 0 for byte-stable CSV");
}

ExperimentConfig build_config(ExperimentConfig c, const SweepFlags& f) {
    if (f.trials) c.trial_count = *f.trials;
    if (f.seed) c.seed = *f.seed;
    if (!f.schemes.empty()) {
        c.schemes.clear();
        for (const std::string& name : f.schemes) {
            const auto s = parse_scheme(name);
            if (!s) throw ParameterError("unknown scheme '" + name + "'");
            c.schemes.push_back(*s);
        }
    }
    if (f.equal_sensing) c.equal_sensing = f.equal_sensing;
    if (f.workers) c.workers = *f.workers;
    if (!f.values.empty()) c.sweep_values = f.values;
    if (f.devices) c.device_count = *f.devices;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw ParameterError("cannot open config " + f.config);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ParameterError(std::string("config is not JSON: ") + e.what());
        }
        c = config_from_json(j, c);
    }
    validate(c);
    return c;
}

int run_sweep_command(const ExperimentConfig& preset, const SweepFlags& f) {
    const ExperimentConfig c = build_config(preset, f);
    const auto rows = run_sweep(c, &std::cerr);
    if (!f.out.empty()) {
        std::ofstream out(f.out);
        if (!out) throw ParameterError("cannot write " + f.out);
        write_csv(out, rows, !f.no_timing);
    }
    const auto cells = summarize(rows);
    write_summary(std::cout, cells);
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.failed;
    if (failed) std::cerr << failed << " of " << rows.size() << " rows failed\n";
    return 0;
}

nlohmann::json solve_all(const Scenario& sc, bool equal_sensing) {
    nlohmann::json out = nlohmann::json::object();
    auto attempt = [&](const char* name, auto&& solve) {
        try {
            out[name] = solve();
        } catch (const std::exception& e) {
            out[name] = {{"error", e.what()}};
        }
    };
    attempt("tdma", [&] { return nlohmann::json(tdma::solve_tdma(sc)); });
    if (sc.size() <= kExhaustiveLimit)
        attempt("tdma_exhaustive", [&] { return nlohmann::json(tdma::exhaustive_sequence_search(sc).allocation); });
    attempt("tdma_async", [&] { return nlohmann::json(tdma_async::solve_async(sc)); });
    attempt("noma_fixed", [&] { return nlohmann::json(noma::solve_noma(sc)); });
    if (equal_sensing)
        attempt("noma_timesharing", [&] { return nlohmann::json(noma_timesharing::solve_timesharing(sc)); });
    attempt("fdma", [&] { return nlohmann::json(fdma::solve_fdma(sc)); });
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensing, offloading and computing allocation for multi-device edge computing"};
    app.require_subcommand(1);

    SweepFlags n_flags, s_flags, c_flags, f_flags;
    auto* sweep_n = app.add_subcommand("sweep-n", "throughput against the number of devices");
    add_sweep_flags(sweep_n, n_flags);
    auto* sweep_s = app.add_subcommand("sweep-sensing", "throughput against the maximum sensing rate");
    add_sweep_flags(sweep_s, s_flags);
    auto* sweep_c = app.add_subcommand("sweep-capacity", "throughput against the edge computing capacity");
    add_sweep_flags(sweep_c, c_flags);
    auto* fair = app.add_subcommand("fairness", "Jain's fairness index against the number of devices");
    add_sweep_flags(fair, f_flags);

    std::size_t devices = 4;
    std::uint64_t seed = 1;
    std::optional<double> equal;
    std::string scenario_path, json_out;
    auto* single = app.add_subcommand("single", "solve one scenario with every scheme and print JSON");
    single->add_option("--devices", devices, "device count")->check(CLI::PositiveNumber);
    single->add_option("--seed", seed, "scenario seed");
    single->add_option("--equal-sensing", equal, "common sensing rate in bits/s");
    single->add_option("--scenario", scenario_path, "read the scenario from JSON instead of drawing it");
    single->add_option("--out", json_out, "write the JSON here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep_n) return run_sweep_command(sweep_n_preset(), n_flags);
        if (*sweep_s) return run_sweep_command(sweep_sensing_preset(), s_flags);
        if (*sweep_c) return run_sweep_command(sweep_capacity_preset(), c_flags);
        if (*fair) return run_sweep_command(fairness_preset(), f_flags);

        Scenario sc;
        if (!scenario_path.empty()) {
            std::ifstream in(scenario_path);
            if (!in) throw ParameterError("cannot open scenario " + scenario_path);
            try {
                sc = nlohmann::json::parse(in).get<Scenario>();
            } catch (const nlohmann::json::exception& e) {
                throw ParameterError(std::string("bad scenario: ") + e.what());
            }
        } else {
            sc = generate_scenario(SystemParams{}, devices, {}, seed);
        }
        if (equal) sc = with_equal_sensing(std::move(sc), *equal);
        validate(sc);
        bool uniform = true;
        for (const Device& d : sc.devices) uniform = uniform && d.sensing_s == sc.devices.front().sensing_s;
        const nlohmann::json doc = {{"scenario", sc}, {"allocations", solve_all(sc, uniform)}};
        if (json_out.empty()) {
            std::cout << doc.dump(2) << '\n';
        } else {
            std::ofstream out(json_out);
            if (!out) throw ParameterError("cannot write " + json_out);
            out << doc.dump(2) << '\n';
        }
        return 0;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 1;
    }
}
