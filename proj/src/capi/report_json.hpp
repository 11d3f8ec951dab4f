#pragma once

// JSON renderings of core result types, shared by the C API entry points.

#include <json.hpp>

#include "diffusion.hpp"
#include "instances.hpp"
#include "objectives.hpp"
#include "optimizer.hpp"
#include "oracle.hpp"

namespace mwec {

using Json = nlohmann::ordered_json;

Json to_json(const ObjectiveReport& rep);
Json to_json(const SeedSelection& sel);
Json to_json(const OracleResult& res);
Json to_json(const ActivationEstimate& est);
Json to_json(const ActivationSample& sample);
Json to_json(const ReductionInstance& red);

}  // namespace mwec
