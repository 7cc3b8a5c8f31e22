#include "edgeoff/json_io.hpp"

#include <string>

#include "edgeoff/errors.hpp"

namespace edgeoff {

void to_json(nlohmann::json& j, const SystemParams& v) {
    j = {{"frame_T", v.frame_T},
         {"bandwidth_B", v.bandwidth_B},
         {"noise_N0", v.noise_N0},
         {"edge_capacity_C", v.edge_capacity_C},
         {"pathloss_c", v.pathloss_c},
         {"pathloss_gamma", v.pathloss_gamma}};
}

void from_json(const nlohmann::json& j, SystemParams& v) {
    j.at("frame_T").get_to(v.frame_T);
    j.at("bandwidth_B").get_to(v.bandwidth_B);
    j.at("noise_N0").get_to(v.noise_N0);
    j.at("edge_capacity_C").get_to(v.edge_capacity_C);
    j.at("pathloss_c").get_to(v.pathloss_c);
    j.at("pathloss_gamma").get_to(v.pathloss_gamma);
}

void to_json(nlohmann::json& j, const Device& v) {
    j = {{"id", v.id},
         {"distance_d", v.distance_d},
         {"fading_rho", v.fading_rho},
         {"gain_h", v.gain_h},
         {"sensing_s", v.sensing_s},
         {"max_power_P", v.max_power_P},
         {"weight_w", v.weight_w}};
}

void from_json(const nlohmann::json& j, Device& v) {
    j.at("id").get_to(v.id);
    j.at("distance_d").get_to(v.distance_d);
    j.at("fading_rho").get_to(v.fading_rho);
    j.at("gain_h").get_to(v.gain_h);
    j.at("sensing_s").get_to(v.sensing_s);
    j.at("max_power_P").get_to(v.max_power_P);
    j.at("weight_w").get_to(v.weight_w);
}

void to_json(nlohmann::json& j, const Scenario& v) { j = {{"system", v.system}, {"devices", v.devices}}; }

void from_json(const nlohmann::json& j, Scenario& v) {
    j.at("system").get_to(v.system);
    j.at("devices").get_to(v.devices);
}

}  // namespace edgeoff

namespace edgeoff::tdma {

void to_json(nlohmann::json& j, const TdmaAllocation& v) {
    j = {{"sequence", v.sequence.slot_to_device},
         {"sense_t1s", v.sense_t1s},
         {"slot_times", v.slot_times},
         {"compute_tc", v.compute_tc},
         {"compute_share", v.compute_share},
         {"offloaded_bits", v.offloaded_bits},
         {"weighted_throughput", v.weighted_throughput},
         {"sum_throughput", v.sum_throughput}};
}

}  // namespace edgeoff::tdma

namespace edgeoff::tdma_async {

void to_json(nlohmann::json& j, const AsyncAllocation& v) {
    j = {{"sequence", v.sequence.slot_to_device},
         {"times", v.times},
         {"compute_share", v.compute_share},
         {"offloaded_bits", v.offloaded_bits},
         {"weighted_throughput", v.weighted_throughput},
         {"sum_throughput", v.sum_throughput},
         {"relaxation_bound", v.relaxation_bound},
         {"share_floor_applied", v.share_floor_applied},
         {"used_synchronous_shares", v.used_synchronous_shares}};
}

}  // namespace edgeoff::tdma_async

namespace edgeoff::noma {

void to_json(nlohmann::json& j, const NomaAllocation& v) {
    j = {{"sense_ts", v.sense_ts},
         {"offload_to", v.offload_to},
         {"compute_tc", v.compute_tc},
         {"beta_star", v.beta_star},
         {"decode_order", v.decode_order},
         {"power", v.power},
         {"rates", v.rates},
         {"compute_share", v.compute_share},
         {"offloaded_bits", v.offloaded_bits},
         {"throughput", v.throughput}};
}

}  // namespace edgeoff::noma

namespace edgeoff::noma_timesharing {

void to_json(nlohmann::json& j, const TimeSharingAllocation& v) {
    nlohmann::json orders = nlohmann::json::array();
    for (const SicOrder& o : v.orders) orders.push_back(o.sequence());
    j = {{"sense_ts", v.sense_ts},
         {"offload_to", v.offload_to},
         {"compute_tc", v.compute_tc},
         {"orders", orders},
         {"fractions", v.fractions},
         {"compute_share", v.compute_share},
         {"offloaded_bits", v.offloaded_bits},
         {"throughput", v.throughput}};
}

}  // namespace edgeoff::noma_timesharing

namespace edgeoff::fdma {

void to_json(nlohmann::json& j, const FdmaAllocation& v) {
    j = {{"sense_ts", v.sense_ts},
         {"offload_to", v.offload_to},
         {"compute_tc", v.compute_tc},
         {"alpha", v.alpha},
         {"compute_share", v.compute_share},
         {"bits_l", v.bits_l},
         {"total", v.total},
         {"upper_bound", v.upper_bound}};
}

}  // namespace edgeoff::fdma

namespace edgeoff::harness {

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig c) {
    if (!j.is_object()) throw ParameterError("config must be a JSON object");
    try {
        if (j.contains("system")) j.at("system").get_to(c.base);
        if (j.contains("trials")) c.trial_count = j.at("trials").get<std::size_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("sweep")) {
            const auto kind = parse_sweep_kind(j.at("sweep").get<std::string>());
            if (!kind) throw ParameterError("unknown sweep kind " + j.at("sweep").dump());
            c.sweep = *kind;
        }
        if (j.contains("values")) c.sweep_values = j.at("values").get<std::vector<double>>();
        if (j.contains("schemes")) {
            c.schemes.clear();
            for (const auto& name : j.at("schemes")) {
                const auto s = parse_scheme(name.get<std::string>());
                if (!s) throw ParameterError("unknown scheme " + name.dump());
                c.schemes.push_back(*s);
            }
        }
        if (j.contains("equal_sensing")) {
            if (j.at("equal_sensing").is_null())
                c.equal_sensing.reset();
            else
                c.equal_sensing = j.at("equal_sensing").get<double>();
        }
        if (j.contains("devices")) c.device_count = j.at("devices").get<std::size_t>();
        if (j.contains("sensing_min")) c.sensing.min = j.at("sensing_min").get<double>();
        if (j.contains("sensing_max")) c.sensing.max = j.at("sensing_max").get<double>();
        if (j.contains("workers")) c.workers = j.at("workers").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("bad config: ") + e.what());
    }
    return c;
}

void to_json(nlohmann::json& j, const ExperimentConfig& v) {
    std::vector<std::string> schemes;
    for (Scheme s : v.schemes) schemes.emplace_back(to_string(s));
    j = {{"system", v.base},
         {"trials", v.trial_count},
         {"seed", v.seed},
         {"sweep", std::string(to_string(v.sweep))},
         {"values", v.sweep_values},
         {"schemes", schemes},
         {"equal_sensing", v.equal_sensing ? nlohmann::json(*v.equal_sensing) : nlohmann::json(nullptr)},
         {"devices", v.device_count},
         {"sensing_min", v.sensing.min},
         {"sensing_max", v.sensing.max},
         {"workers", v.workers}};
}

}  // namespace edgeoff::harness
