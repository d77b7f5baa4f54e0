#include "zakharov/profiles.hpp"

#include <cmath>
#include <numbers>

#include "zakharov/error.hpp"
#include "zakharov/field_io.hpp"
#include "zakharov/ground_state.hpp"

namespace zakharov {

namespace {

Vec3 vec3(const nlohmann::json& spec, const char* key) {
  Vec3 v{0.0, 0.0, 0.0};
  if (!spec.contains(key)) return v;
  const auto& a = spec.at(key);
  require(a.is_array() && a.size() == 3, std::string("profile: '") + key + "' must be a 3-vector");
  for (int i = 0; i < 3; ++i) v[i] = a[i].get<double>();
  return v;
}

cplx amplitude(const nlohmann::json& spec) {
  if (!spec.contains("amplitude")) return 1.0;
  const auto& a = spec.at("amplitude");
  if (a.is_array()) {
    require(a.size() == 2, "profile: complex amplitude must be [re, im]");
    return {a[0].get<double>(), a[1].get<double>()};
  }
  return a.get<double>();
}

SpectralField ground_state_field(const GridSpec& grid, bool square) {
  const GroundState gs = ground_state();
  SpectralField q = grid_ground_state(gs, grid).field.to_physical();
  if (square)
    for (auto& c : q.values()) c = -c * c;
  return q;
}

}  // namespace

std::vector<std::string> profile_names() {
  return {"zero", "gaussian", "shell", "mixed", "ground_state", "ground_state_square", "file"};
}

double parse_length(const nlohmann::json& value) {
  if (value.is_number()) return value.get<double>();
  require(value.is_string(), "length must be a number or '<c>pi'");
  std::string s = value.get<std::string>();
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    const std::string head = s.substr(0, s.size() - 2);
    try {
      return (head.empty() ? 1.0 : std::stod(head)) * std::numbers::pi;
    } catch (const std::exception&) {
      throw PreconditionError("cannot parse length '" + s + "'");
    }
  }
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw PreconditionError("cannot parse length '" + s + "'");
  }
}

SpectralField make_profile(const GridSpec& grid, const nlohmann::json& spec) {
  require(spec.is_object() && spec.contains("profile"), "profile: object with a 'profile' key expected");
  const std::string name = spec.at("profile").get<std::string>();
  const cplx a = amplitude(spec);
  if (name == "zero") return SpectralField(grid, Side::physical);
  if (name == "file") {
    SpectralField f = load_field(spec.at("path").get<std::string>());
    require(f.grid() == grid, "profile: file grid does not match the configured grid");
    return a * f.to_physical();
  }
  if (name == "ground_state" || name == "ground_state_square")
    return a * ground_state_field(grid, name == "ground_state_square");

  const double w = spec.value("width", 1.0);
  require(w > 0.0, "profile: width must be positive");
  const Vec3 c = vec3(spec, "center");
  const Vec3 d = vec3(spec, "dipole");
  std::function<cplx(const Vec3&, double)> shape;
  if (name == "gaussian")
    shape = [&](const Vec3& y, double) { return cplx(1.0, d[0] * y[0] + d[1] * y[1] + d[2] * y[2]); };
  else if (name == "shell")
    shape = [&](const Vec3&, double r2) { return cplx(1.0 - r2 / (3.0 * w * w)); };
  else if (name == "mixed")
    shape = [&](const Vec3& y, double) { return cplx(1.0 + y[0] + y[1] * y[2]); };
  else
    throw PreconditionError("unknown profile '" + name + "'");
  return SpectralField::from_function(grid, [&](const Vec3& x) {
    const Vec3 y{x[0] - c[0], x[1] - c[1], x[2] - c[2]};
    const double r2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    return a * shape(y, r2) * std::exp(-r2 / (2.0 * w * w));
  });
}

}  // namespace zakharov
