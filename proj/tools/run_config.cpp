#include "run_config.hpp"

#include <fstream>

#include "zakharov/error.hpp"
#include "zakharov/fourier_bessel.hpp"
#include "zakharov/good_frame.hpp"
#include "zakharov/profiles.hpp"
#include "zakharov/randomize_phys.hpp"

namespace zakharov::cli {

nlohmann::json default_config() {
  return {
      {"grid", {{"L", "4pi"}, {"N", 16}}},
      {"physics", {{"alpha", 1.0}}},
      {"spaces", {{"nu", 0.05}, {"eps", 0.05}}},
      {"time", {{"T", 2.0}, {"T_max", 4.0}, {"dt", 0.05}}},
      {"randomization",
       {{"u", "none"},
        {"v", "none"},
        {"family", "gaussian"},
        {"seed", 0},
        {"variance", 1.0},
        {"bound", 1.0},
        {"k_deg_max", 2},
        {"frame_seed", 1}}},
      {"solver", {{"tol", 1e-8}, {"max_iter", 12}, {"include_aniso", true}}},
      {"data", {{"u_plus", {{"profile", "zero"}}}, {"v_plus", {{"profile", "zero"}}}}},
      {"experiment", nlohmann::json::object()},
  };
}

nlohmann::json resolve_config(const nlohmann::json& doc) {
  require(doc.is_object(), "config: top level must be an object");
  nlohmann::json out = default_config();
  out.merge_patch(doc);
  // Data profiles are replaced wholesale, not merged.
  if (doc.contains("data"))
    for (const char* key : {"u_plus", "v_plus"})
      if (doc.at("data").contains(key)) out["data"][key] = doc.at("data").at(key);
  return out;
}

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config '" + path + "'");
  try {
    return resolve_config(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError("config '" + path + "': " + e.what());
  }
}

void apply_override(nlohmann::json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  require(eq != std::string::npos && eq > 0, "override '" + assignment + "' must look like key.path=value");
  const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  nlohmann::json value;
  try {
    value = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception&) {
    value = text;
  }
  nlohmann::json* node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    require(!part.empty(), "override '" + assignment + "' has an empty key component");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    if (!node->contains(part) || !(*node)[part].is_object()) (*node)[part] = nlohmann::json::object();
    node = &(*node)[part];
    start = dot + 1;
  }
}

GridSpec config_grid(const nlohmann::json& config) {
  const auto& g = config.at("grid");
  return make_grid(parse_length(g.at("L")), g.at("N").get<int>());
}

RandomModel config_model(const nlohmann::json& config) {
  const auto& r = config.at("randomization");
  RandomModel m;
  m.family = parse_family(r.value("family", std::string("gaussian")));
  m.seed = r.value("seed", std::uint64_t{0});
  m.variance = r.value("variance", 1.0);
  m.bound = r.value("bound", 1.0);
  require(m.variance > 0.0 && m.bound > 0.0, "randomization: variance and bound must be positive");
  return m;
}

double config_sigma(const nlohmann::json& config) { return 0.5 - get_or(config, "spaces", "nu", 0.05); }

PicardSpec config_picard(const nlohmann::json& config) {
  PicardSpec s;
  s.alpha = get_or(config, "physics", "alpha", 1.0);
  s.T = get_or(config, "time", "T", s.T);
  s.T_max = get_or(config, "time", "T_max", s.T_max);
  s.dt = get_or(config, "time", "dt", s.dt);
  s.nu = get_or(config, "spaces", "nu", s.nu);
  s.eps = get_or(config, "spaces", "eps", s.eps);
  s.tol = get_or(config, "solver", "tol", s.tol);
  s.max_iter = get_or(config, "solver", "max_iter", s.max_iter);
  s.x_options.include_aniso = get_or(config, "solver", "include_aniso", true);
  return s;
}

std::pair<SpectralField, SpectralField> config_data(const nlohmann::json& config, const GridSpec& grid) {
  const auto& d = config.at("data");
  SpectralField u = make_profile(grid, d.at("u_plus")).to_frequency();
  SpectralField v = make_profile(grid, d.at("v_plus")).to_frequency();
  if (d.contains("scale")) {
    // ||u_plus||_{H^1} + ||v_plus||_{L^2} set to the given value.
    const double target = d.at("scale").get<double>();
    const double size = h1_norm(u) + v.l2_norm();
    require(size > 0.0 || target == 0.0, "data.scale: cannot rescale zero data");
    if (size > 0.0) {
      u *= target / size;
      v *= target / size;
    }
  }
  return {u, v};
}

std::pair<SpectralField, SpectralField> randomize_data(const nlohmann::json& config, const SpectralField& u,
                                                       const SpectralField& v, std::uint64_t draw) {
  const auto& r = config.at("randomization");
  const std::string uk = r.value("u", std::string("none")), vk = r.value("v", std::string("none"));
  require(uk == "none" || uk == "phys", "randomization.u must be none or phys");
  require(vk == "none" || vk == "phys" || vk == "angular", "randomization.v must be none, phys or angular");
  const RandomModel model = config_model(config);
  std::pair<SpectralField, SpectralField> out{u, v};
  if (uk == "phys" || vk == "phys") {
    const PartitionOfUnity pou(u.grid());
    if (uk == "phys") out.first = randomize_physical(u, pou, model, 2 * draw).to_frequency();
    if (vk == "phys") out.second = randomize_physical(v, pou, model, 2 * draw + 1).to_frequency();
  }
  if (vk == "angular") {
    const GoodFrame frame = build_good_frame(r.value("k_deg_max", 2), r.value("frame_seed", std::uint64_t{1}));
    out.second = randomize_angular(v, frame, model, 2 * draw + 1).to_frequency();
  }
  return out;
}

}  // namespace zakharov::cli
