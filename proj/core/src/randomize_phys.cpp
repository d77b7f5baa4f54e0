#include "zakharov/randomize_phys.hpp"

#include <algorithm>
#include <cmath>

#include "zakharov/dyadic.hpp"
#include "zakharov/error.hpp"

namespace zakharov {

double unit_bump(double r) { return smoothstep(2.0 - std::abs(r)); }

PartitionOfUnity::PartitionOfUnity(const GridSpec& grid) : grid_(grid) {
  const double L = grid.box_length();
  require(L >= 4.0, "partition of unity: box must span at least 4 unit cells");
  lo_ = static_cast<int>(std::ceil(-0.5 * L));
  hi_ = static_cast<int>(std::floor(0.5 * L));
  if (hi_ >= 0.5 * L) --hi_;
  for (int a = lo_; a <= hi_; ++a)
    for (int b = lo_; b <= hi_; ++b)
      for (int c = lo_; c <= hi_; ++c) translates_.push_back({a, b, c});
  require(translates_.size() >= 27, "partition of unity: fewer than 27 translates");
  normalizer_.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double s = 0.0;
    for_each_near(grid.node(i), [&](const Translate&, double r) { s += unit_bump(r); });
    normalizer_[i] = s;
  }
}

void PartitionOfUnity::for_each_near(const Vec3& x, const std::function<void(const Translate&, double)>& fn) const {
  const double L = grid_.box_length();
  std::vector<int> cand[3];
  for (int a = 0; a < 3; ++a) {
    for (double shift : {-L, 0.0, L}) {
      const int from = std::max(lo_, static_cast<int>(std::ceil(x[a] + shift - 2.0)));
      const int to = std::min(hi_, static_cast<int>(std::floor(x[a] + shift + 2.0)));
      for (int k = from; k <= to; ++k)
        if (std::find(cand[a].begin(), cand[a].end(), k) == cand[a].end()) cand[a].push_back(k);
    }
  }
  for (int a : cand[0])
    for (int b : cand[1])
      for (int c : cand[2]) {
        const Translate k{a, b, c};
        const Vec3 d = displacement(x, k);
        const double r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        if (r2 < 4.0) fn(k, std::sqrt(r2));
      }
}

Vec3 PartitionOfUnity::displacement(const Vec3& x, const Translate& k) const {
  const double L = grid_.box_length();
  Vec3 d;
  for (int a = 0; a < 3; ++a) {
    double t = x[a] - k[a];
    t -= L * std::floor(t / L + 0.5);
    d[a] = t;
  }
  return d;
}

double PartitionOfUnity::psi(const Translate& k, std::size_t node) const {
  const Vec3 d = displacement(grid_.node(node), k);
  const double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  if (r >= 2.0) return 0.0;
  return unit_bump(r) / normalizer_[node];
}

std::vector<double> PartitionOfUnity::sum_of_squares() const {
  std::vector<double> out(grid_.size(), 0.0);
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    double s = 0.0;
    for_each_near(grid_.node(i), [&](const Translate&, double r) {
      const double w = unit_bump(r) / normalizer_[i];
      s += w * w;
    });
    out[i] = s;
  }
  return out;
}

SpectralField PartitionOfUnity::piece(const Translate& k) const {
  SpectralField out(grid_, Side::physical);
  for (std::size_t i = 0; i < grid_.size(); ++i) out[i] = psi(k, i);
  return out;
}

std::vector<double> PartitionOfUnity::combine(const std::function<double(const Translate&)>& c) const {
  const int span = hi_ - lo_ + 1;
  std::vector<double> coeff(translates_.size());
  for (std::size_t t = 0; t < translates_.size(); ++t) coeff[t] = c(translates_[t]);
  std::vector<double> out(grid_.size(), 0.0);
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    double s = 0.0;
    for_each_near(grid_.node(i), [&](const Translate& k, double r) {
      s += coeff[(static_cast<std::size_t>(k[0] - lo_) * span + (k[1] - lo_)) * span + (k[2] - lo_)] * unit_bump(r);
    });
    out[i] = s / normalizer_[i];
  }
  return out;
}

PartitionOfUnity build_partition(const GridSpec& grid) { return PartitionOfUnity(grid); }

SpectralField randomize_physical_with(const SpectralField& f, const PartitionOfUnity& pou,
                                      const std::function<double(const Translate&)>& multipliers) {
  require(f.grid() == pou.grid(), "randomize_physical: field and partition on different grids");
  SpectralField out = f.to_physical();
  const auto w = pou.combine(multipliers);
  for (std::size_t i = 0; i < w.size(); ++i) out[i] *= w[i];
  return out;
}

SpectralField randomize_physical(const SpectralField& f, const PartitionOfUnity& pou, const RandomModel& model,
                                 std::uint64_t draw) {
  return randomize_physical_with(f, pou, [&](const Translate& k) {
    return model.sample("phys", draw, {k[0], k[1], k[2]});
  });
}

}  // namespace zakharov
