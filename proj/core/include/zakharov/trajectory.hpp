#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zakharov/grid.hpp"

namespace zakharov {

// Time-indexed (u, v) snapshots on a uniform grid T = t_0 < ... < t_M.
struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> u;
  std::vector<SpectralField> v;
  std::string provenance;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  const GridSpec& grid() const { return u.front().grid(); }
  // Throws unless snapshot counts match, the grid is shared and times increase.
  void validate() const;
};

// t_0 = t0, t_M = t1 with M = round((t1 - t0) / dt); dt must divide the span.
std::vector<double> uniform_times(double t0, double t1, double dt);

Trajectory zero_trajectory(const GridSpec& grid, const std::vector<double>& times);
Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b);
Trajectory trajectory_sum(const Trajectory& a, const Trajectory& b);

// Directory layout: manifest.json plus fields/u_NNNN.zkrf, fields/v_NNNN.zkrf.
void save_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                     const nlohmann::json& extra = nlohmann::json::object());
Trajectory load_trajectory(const std::filesystem::path& dir);

}  // namespace zakharov
