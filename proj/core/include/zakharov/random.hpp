#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace zakharov {

enum class Family { gaussian, bounded };

Family parse_family(const std::string& name);
std::string to_string(Family f);

/*
 * Mean-zero coefficient law with counter-based substreams. The value for
 * (tag, draw, index) is a pure function of the seed, so sampling order and
 * thread count never change results.
 *   gaussian: N(0, variance)
 *   bounded:  +-bound with probability 1/2 each
 */
struct RandomModel {
  Family family = Family::gaussian;
  std::uint64_t seed = 0;
  double variance = 1.0;
  double bound = 1.0;

  double sample(std::string_view tag, std::uint64_t draw, const std::array<std::int64_t, 3>& index) const;
  // Second moment of the law.
  double second_moment() const { return family == Family::gaussian ? variance : bound * bound; }
  // Constant c in E exp(gamma X) <= exp(c gamma^2).
  double mgf_constant() const { return 0.5 * second_moment(); }

  nlohmann::json to_json() const;
  static RandomModel from_json(const nlohmann::json& j);
};

// Stable 64-bit mixing (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_tag(std::string_view tag);
std::uint64_t stream_id(std::uint64_t seed, std::string_view tag, std::uint64_t draw,
                        const std::array<std::int64_t, 3>& index);
// Uniform in (0, 1) from a substream and a counter.
double stream_uniform(std::uint64_t stream, std::uint64_t counter);
double stream_normal(std::uint64_t stream, std::uint64_t counter);

std::vector<double> sample_coefficients(const RandomModel& model, std::string_view tag, std::uint64_t draw,
                                        const std::vector<std::array<std::int64_t, 3>>& indices);

}  // namespace zakharov
