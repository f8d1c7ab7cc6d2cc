#include "etflab/serialize.hpp"

#include <fmt/core.h>

#include "etflab/error.hpp"

namespace etflab {

Json to_json(const Configuration& config) {
  Json points = Json::array();
  for (std::size_t i = 0; i < config.n(); ++i) {
    const auto p = config.point(i);
    points.push_back(Json(std::vector<double>(p.begin(), p.end())));
  }
  return Json{{"n", config.n()}, {"m", config.m()}, {"points", std::move(points)}};
}

Configuration config_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto m = j.at("m").get<std::size_t>();
    const auto& points = j.at("points");
    if (!points.is_array() || points.size() != n)
      throw ParameterError(fmt::format("\"points\" must hold n={} rows", n));
    std::vector<double> coords;
    coords.reserve(n * m);
    for (const auto& row : points) {
      if (!row.is_array() || row.size() != m) throw ParameterError(fmt::format("every point must have m={} coordinates", m));
      for (const auto& x : row) coords.push_back(x.get<double>());
    }
    return Configuration(n, m, std::move(coords));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(fmt::format("malformed configuration JSON: {}", e.what()));
  }
}

Json to_json(const EnergyReport& r) {
  return Json{{"loss_sym", r.loss_sym},
              {"lower_bound", r.lower_bound},
              {"jensen_upper", r.jensen_upper},
              {"frame_potential", r.frame_potential},
              {"pair_exp_mean", r.pair_exp_mean},
              {"uniform_energy", r.uniform_energy},
              {"gap", r.gap}};
}

Json to_json(const UniformityReport& r) {
  Json moments = Json::array();
  for (const auto& [l, v] : r.moments) moments.push_back(Json::array({l, v}));
  return Json{{"n", r.n},
              {"m", r.m},
              {"mean_resultant", r.mean_resultant},
              {"frame_ratio", r.frame_ratio},
              {"moments", std::move(moments)}};
}

std::vector<TracePoint> subsample_trace(const std::vector<TracePoint>& trace, std::size_t max_entries) {
  if (trace.size() <= max_entries || max_entries < 2) return trace;
  std::vector<TracePoint> out;
  out.reserve(max_entries);
  // Evenly spaced indices from 0 to size-1 inclusive.
  const std::size_t last = trace.size() - 1;
  for (std::size_t k = 0; k < max_entries; ++k) out.push_back(trace[k * last / (max_entries - 1)]);
  return out;
}

Json to_json(const OptResult& r, std::size_t max_trace) {
  Json trace = Json::array();
  for (const auto& t : subsample_trace(r.trace, max_trace)) trace.push_back(Json::array({t.iteration, t.loss}));
  Json j{{"objective", to_string(r.objective)},
         {"alpha", r.alpha},
         {"best_loss", r.best_loss},
         {"grad_norm_final", r.grad_norm_final},
         {"iterations_used", r.iterations_used},
         {"restart_index", r.restart_index},
         {"converged", r.converged},
         {"config", to_json(r.best_config())}};
  if (const auto* pair = std::get_if<PairConfiguration>(&r.best)) j["config_v"] = to_json(pair->v());
  j["trace"] = std::move(trace);
  return j;
}

}  // namespace etflab
