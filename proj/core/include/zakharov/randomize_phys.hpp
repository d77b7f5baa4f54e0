#pragma once

#include <array>
#include <functional>
#include <vector>

#include "zakharov/grid.hpp"
#include "zakharov/random.hpp"

namespace zakharov {

using Translate = std::array<int, 3>;

// phi = 1 on |x| <= 1, 0 on |x| >= 2 (same smoothstep family as eta0).
double unit_bump(double r);

/*
 * psi_k(x) = phi(x - k) / sum_l phi(x - l) over integer translates k in the
 * fundamental box, distances taken periodically (minimum image).
 */
class PartitionOfUnity {
 public:
  explicit PartitionOfUnity(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  const std::vector<Translate>& translates() const { return translates_; }
  std::size_t count() const { return translates_.size(); }

  // Minimum-image displacement x - k.
  Vec3 displacement(const Vec3& x, const Translate& k) const;
  double psi(const Translate& k, std::size_t node) const;
  // psi_k as a physical-side field.
  SpectralField piece(const Translate& k) const;
  // Node-wise sum_k c(k) psi_k(x).
  std::vector<double> combine(const std::function<double(const Translate&)>& c) const;

  // Node-wise sum_k psi_k(x)^2.
  std::vector<double> sum_of_squares() const;
  // Calls fn(k, |x - k|) for every translate within distance 2 of x.
  void for_each_near(const Vec3& x, const std::function<void(const Translate&, double)>& fn) const;

 private:
  GridSpec grid_;
  int lo_ = 0, hi_ = 0;  // integer translate range per axis
  std::vector<Translate> translates_;
  std::vector<double> normalizer_;
};

PartitionOfUnity build_partition(const GridSpec& grid);

// f^omega = sum_k X_k(omega) psi_k f node-wise, X_k from the "phys" substream.
SpectralField randomize_physical(const SpectralField& f, const PartitionOfUnity& pou, const RandomModel& model,
                                 std::uint64_t draw);
// Same with explicitly supplied multipliers.
SpectralField randomize_physical_with(const SpectralField& f, const PartitionOfUnity& pou,
                                      const std::function<double(const Translate&)>& multipliers);

}  // namespace zakharov
