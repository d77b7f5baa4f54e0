#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zakharov/grid.hpp"
#include "zakharov/picard.hpp"
#include "zakharov/random.hpp"

namespace zakharov::cli {

/*
 * Run configuration: one JSON document with nested sections
 *   grid {L, N}, physics {alpha}, spaces {nu, eps}, time {T, T_max, dt},
 *   randomization {u, v, family, seed, variance, bound, k_deg_max, frame_seed},
 *   solver {tol, max_iter, include_aniso}, data {u_plus, v_plus, scale},
 *   experiment {...}.
 * sigma = 1/2 - nu is always derived.
 */
nlohmann::json default_config();

// Defaults merged under the given document (document values win).
nlohmann::json resolve_config(const nlohmann::json& doc);
nlohmann::json load_config(const std::string& path);

// Applies "a.b.c=value"; value is parsed as JSON, falling back to a string.
void apply_override(nlohmann::json& config, const std::string& assignment);

GridSpec config_grid(const nlohmann::json& config);
RandomModel config_model(const nlohmann::json& config);
PicardSpec config_picard(const nlohmann::json& config);
double config_sigma(const nlohmann::json& config);

// Final data (u_plus, v_plus) from the data section, rescaled when data.scale is set.
std::pair<SpectralField, SpectralField> config_data(const nlohmann::json& config, const GridSpec& grid);

// Applies randomization.u (none | phys) and randomization.v (none | phys | angular)
// with draw index `draw` (u uses 2 draw, v uses 2 draw + 1).
std::pair<SpectralField, SpectralField> randomize_data(const nlohmann::json& config, const SpectralField& u,
                                                       const SpectralField& v, std::uint64_t draw = 0);

// Typed access to config[section][key] with a default.
template <class T>
T get_or(const nlohmann::json& config, const std::string& section, const std::string& key, const T& fallback) {
  if (!config.contains(section) || !config.at(section).contains(key)) return fallback;
  return config.at(section).at(key).get<T>();
}

}  // namespace zakharov::cli
