#include "zakharov/random.hpp"

#include <cmath>
#include <numbers>

#include "zakharov/error.hpp"

namespace zakharov {

Family parse_family(const std::string& name) {
  if (name == "gaussian") return Family::gaussian;
  if (name == "bounded") return Family::bounded;
  throw PreconditionError("unknown random family '" + name + "' (expected gaussian or bounded)");
}

std::string to_string(Family f) { return f == Family::gaussian ? "gaussian" : "bounded"; }

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

std::uint64_t stream_id(std::uint64_t seed, std::string_view tag, std::uint64_t draw,
                        const std::array<std::int64_t, 3>& index) {
  std::uint64_t h = mix64(seed ^ hash_tag(tag));
  h = mix64(h ^ mix64(draw));
  for (auto k : index) h = mix64(h ^ static_cast<std::uint64_t>(k) * 0xd6e8feb86659fd93ULL);
  return h;
}

double stream_uniform(std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t bits = mix64(stream + 0x632be59bd9b4e019ULL * (counter + 1));
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double stream_normal(std::uint64_t stream, std::uint64_t counter) {
  const double u1 = stream_uniform(stream, 2 * counter);
  const double u2 = stream_uniform(stream, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomModel::sample(std::string_view tag, std::uint64_t draw, const std::array<std::int64_t, 3>& index) const {
  const std::uint64_t s = stream_id(seed, tag, draw, index);
  if (family == Family::gaussian) return std::sqrt(variance) * stream_normal(s, 0);
  return stream_uniform(s, 0) < 0.5 ? -bound : bound;
}

nlohmann::json RandomModel::to_json() const {
  nlohmann::json j{{"family", to_string(family)}, {"seed", seed}};
  if (family == Family::gaussian) j["variance"] = variance;
  else j["bound"] = bound;
  j["stream_rule"] = "mix64(seed ^ tag) -> draw -> index components";
  return j;
}

RandomModel RandomModel::from_json(const nlohmann::json& j) {
  RandomModel m;
  m.family = parse_family(j.value("family", std::string("gaussian")));
  m.seed = j.value("seed", std::uint64_t{0});
  m.variance = j.value("variance", 1.0);
  m.bound = j.value("bound", 1.0);
  require(m.variance > 0.0 && m.bound > 0.0, "random model: variance and bound must be positive");
  return m;
}

std::vector<double> sample_coefficients(const RandomModel& model, std::string_view tag, std::uint64_t draw,
                                        const std::vector<std::array<std::int64_t, 3>>& indices) {
  std::vector<double> out(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) out[i] = model.sample(tag, draw, indices[i]);
  return out;
}

}  // namespace zakharov
