#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "etflab/energy.hpp"
#include "etflab/optimize.hpp"
#include "etflab/sphere.hpp"
#include "etflab/uniformity.hpp"

namespace etflab {

using Json = nlohmann::ordered_json;

/// {"n": .., "m": .., "points": [[..], ..]}
Json to_json(const Configuration& config);

/// Inverse of to_json(Configuration). Shape errors and non-unit rows throw ParameterError.
Configuration config_from_json(const Json& j);

/// Flat object with the seven EnergyReport fields.
Json to_json(const EnergyReport& report);

/// Moments as [[l, M_l], ..].
Json to_json(const UniformityReport& report);

/// {"objective", "alpha", "best_loss", "grad_norm_final", "iterations_used",
///  "restart_index", "converged", "config", "trace"}; pair results add
/// "config_v". The trace is subsampled to at most max_trace entries and always
/// keeps the last one.
Json to_json(const OptResult& result, std::size_t max_trace = 1000);

std::vector<TracePoint> subsample_trace(const std::vector<TracePoint>& trace, std::size_t max_entries);

}  // namespace etflab
