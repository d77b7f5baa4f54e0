#include "zakharov/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "zakharov/error.hpp"
#include "zakharov/field_io.hpp"

namespace zakharov {

void Trajectory::validate() const {
  require(!times.empty(), "trajectory is empty");
  require(u.size() == times.size() && v.size() == times.size(), "trajectory snapshot count mismatch");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(u[i].grid() == u[0].grid() && v[i].grid() == u[0].grid(), "trajectory snapshots on different grids");
    if (i > 0) require(times[i] > times[i - 1], "trajectory time grid must increase");
  }
}

std::vector<double> uniform_times(double t0, double t1, double dt) {
  require(dt > 0.0 && t1 >= t0, "uniform_times: need dt > 0 and t1 >= t0");
  const double steps = (t1 - t0) / dt;
  const long m = std::lround(steps);
  require(std::abs(steps - m) < 1e-8 * std::max(1.0, steps), "uniform_times: dt must divide the time span");
  std::vector<double> t(static_cast<std::size_t>(m) + 1);
  for (long i = 0; i <= m; ++i) t[i] = i == m ? t1 : t0 + dt * i;
  return t;
}

Trajectory zero_trajectory(const GridSpec& grid, const std::vector<double>& times) {
  Trajectory t;
  t.times = times;
  t.u.assign(times.size(), SpectralField(grid));
  t.v.assign(times.size(), SpectralField(grid));
  t.provenance = "zero";
  return t;
}

namespace {

Trajectory combine(const Trajectory& a, const Trajectory& b, double sign) {
  require(a.size() == b.size(), "trajectory sizes differ");
  Trajectory out;
  out.times = a.times;
  out.provenance = a.provenance;
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(std::abs(a.times[i] - b.times[i]) <= 1e-12 * std::max(1.0, std::abs(a.times[i])),
            "trajectory time grids differ");
    out.u.push_back(a.u[i].to_frequency() + cplx(sign) * b.u[i].to_frequency());
    out.v.push_back(a.v[i].to_frequency() + cplx(sign) * b.v[i].to_frequency());
  }
  return out;
}

std::string snapshot_name(char which, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c_%04zu.zkrf", which, i);
  return buf;
}

}  // namespace

Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b) { return combine(a, b, -1.0); }
Trajectory trajectory_sum(const Trajectory& a, const Trajectory& b) { return combine(a, b, 1.0); }

void save_trajectory(const std::filesystem::path& dir, const Trajectory& traj, const nlohmann::json& extra) {
  traj.validate();
  std::filesystem::create_directories(dir / "fields");
  nlohmann::json m = extra;
  m["format"] = "zakharov-trajectory";
  m["version"] = 1;
  m["grid"] = {{"L", traj.grid().box_length()}, {"N", traj.grid().points()}};
  m["times"] = traj.times;
  m["provenance"] = traj.provenance;
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const std::string un = snapshot_name('u', i), vn = snapshot_name('v', i);
    save_field(dir / "fields" / un, traj.u[i].to_frequency());
    save_field(dir / "fields" / vn, traj.v[i].to_frequency());
    files.push_back({{"u", "fields/" + un}, {"v", "fields/" + vn}});
  }
  m["snapshots"] = files;
  std::ofstream os(dir / "manifest.json");
  os << m.dump(2) << '\n';
}

Trajectory load_trajectory(const std::filesystem::path& dir) {
  std::ifstream is(dir / "manifest.json");
  if (!is) throw PreconditionError("missing trajectory manifest in " + dir.string());
  nlohmann::json m = nlohmann::json::parse(is);
  Trajectory t;
  t.times = m.at("times").get<std::vector<double>>();
  t.provenance = m.value("provenance", std::string());
  for (const auto& s : m.at("snapshots")) {
    t.u.push_back(load_field(dir / s.at("u").get<std::string>()));
    t.v.push_back(load_field(dir / s.at("v").get<std::string>()));
  }
  t.validate();
  return t;
}

}  // namespace zakharov
