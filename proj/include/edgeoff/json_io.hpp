#pragma once

#include "edgeoff/fdma.hpp"
#include "edgeoff/harness.hpp"
#include "edgeoff/noma.hpp"
#include "edgeoff/noma_timesharing.hpp"
#include "edgeoff/scenario.hpp"
#include "edgeoff/tdma.hpp"
#include "edgeoff/tdma_async.hpp"
#include "json.hpp"

// ADL hooks for nlohmann::json. Field names match the struct members.
// Scenario and ExperimentConfig read back; allocations are write-only.

namespace edgeoff {
void to_json(nlohmann::json& j, const SystemParams& v);
void from_json(const nlohmann::json& j, SystemParams& v);
void to_json(nlohmann::json& j, const Device& v);
void from_json(const nlohmann::json& j, Device& v);
void to_json(nlohmann::json& j, const Scenario& v);
void from_json(const nlohmann::json& j, Scenario& v);
}  // namespace edgeoff

namespace edgeoff::tdma {
void to_json(nlohmann::json& j, const TdmaAllocation& v);
}

namespace edgeoff::tdma_async {
void to_json(nlohmann::json& j, const AsyncAllocation& v);
}

namespace edgeoff::noma {
void to_json(nlohmann::json& j, const NomaAllocation& v);
}

namespace edgeoff::noma_timesharing {
void to_json(nlohmann::json& j, const TimeSharingAllocation& v);
}

namespace edgeoff::fdma {
void to_json(nlohmann::json& j, const FdmaAllocation& v);
}

namespace edgeoff::harness {
/// Keys: trials, seed, sweep, values, schemes, equal_sensing, devices,
/// sensing_min, sensing_max, workers, system. Missing keys keep `base`.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base);
void to_json(nlohmann::json& j, const ExperimentConfig& v);
}  // namespace edgeoff::harness
