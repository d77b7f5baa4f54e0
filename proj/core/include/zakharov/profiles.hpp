#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zakharov/grid.hpp"

namespace zakharov {

/*
 * Named data profiles, described by a JSON object:
 *   {"profile": "gaussian", "width": w, "amplitude": a | [re, im],
 *    "center": [c1, c2, c3], "dipole": [d1, d2, d3]}
 * gives a (1 + i d.(x - c)) exp(-|x - c|^2 / 2 w^2). Other profiles:
 *   zero, shell ((1 - |x|^2 / 3w^2) gaussian), mixed ((1 + x1 + x2 x3) gaussian),
 *   ground_state (Q on the grid), ground_state_square (-Q^2), file ({"path": ...}).
 */
SpectralField make_profile(const GridSpec& grid, const nlohmann::json& spec);

std::vector<std::string> profile_names();

// Box length given as a number or as "<c>pi".
double parse_length(const nlohmann::json& value);

}  // namespace zakharov
