#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "zakharov/dyadic.hpp"
#include "zakharov/error.hpp"

using namespace zakharov;

namespace {

SpectralField test_field(const GridSpec& g) {
  return SpectralField::from_function(g, [](const Vec3& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return cplx((1.0 + x[0]) * std::exp(-r2 / 2.0), 0.3 * x[1] * std::exp(-r2));
  });
}

}  // namespace

TEST(Dyadic, SmoothstepSymmetryAndFlatness) {
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.8, 1.0}) EXPECT_NEAR(smoothstep(x) + smoothstep(1.0 - x), 1.0, 1e-14);
  EXPECT_EQ(smoothstep(-0.3), 0.0);
  EXPECT_EQ(smoothstep(1.2), 1.0);
  // Flat to fourth order at the ends: S(x) ~ 126 x^5.
  EXPECT_NEAR(smoothstep(1e-3) / 1e-15, 126.0, 1.0);
}

TEST(Dyadic, CutoffPlateaus) {
  EXPECT_EQ(eta0(0.0), 1.0);
  EXPECT_EQ(eta0(1.25), 1.0);
  EXPECT_EQ(eta0(1.6), 0.0);
  EXPECT_GT(eta0(1.4), 0.0);
  EXPECT_LT(eta0(1.4), 1.0);
  // rho_k = 1 on [1.6 2^{k-1}, 1.25 2^k] and vanishes outside (5/8, 8/5) 2^k.
  EXPECT_NEAR(rho(3, 7.0), 1.0, 1e-15);
  EXPECT_EQ(rho(3, 4.9), 0.0);
  EXPECT_EQ(rho(3, 12.9), 0.0);
}

TEST(Dyadic, BlocksTelescope) {
  for (double r : {0.3, 1.0, 2.2, 5.5, 9.0}) {
    double s = 0.0;
    for (int k = -3; k <= 4; ++k) s += rho(k, r);
    EXPECT_NEAR(s, rho_le(4, r) - rho_le(-4, r), 1e-14);
  }
}

TEST(Dyadic, ProjectionsSumToLowPass) {
  const GridSpec g = make_grid(4.0 * std::numbers::pi, 32);
  const SpectralField f = test_field(g).to_frequency();
  SpectralField sum(g, Side::frequency);
  for (int k = g.k_min(); k <= g.k_max(); ++k) sum += lp_project(f, Band::exact, k);
  // The blocks telescope to P_{<=k_max} minus the zero mode.
  SpectralField low = lp_project(f, Band::at_most, g.k_max());
  low[0] = 0.0;
  EXPECT_LT((sum - low).l2_norm(), 1e-12 * f.l2_norm());
  const SpectralField hi = lp_project(f, Band::at_least, 1);
  EXPECT_LT((hi + lp_project(f, Band::at_most, 0) - f).l2_norm(), 1e-12 * f.l2_norm());
}

TEST(Dyadic, ProjectionOutOfRangeRejected) {
  const GridSpec g = make_grid(4.0 * std::numbers::pi, 16);
  const SpectralField f(g);
  EXPECT_THROW(lp_project(f, Band::exact, g.k_max() + 1), PreconditionError);
}

TEST(Dyadic, BesovBracket) {
  // Almost orthogonal blocks: ||f||^2 / 2 <= sum_k ||P_k f||^2 <= ||f||^2 for f inside the resolved range.
  const GridSpec g = make_grid(4.0 * std::numbers::pi, 32);
  SpectralField f(g, Side::frequency);
  const SpectralField base = test_field(g).to_frequency();
  for (int k = g.k_min(); k <= g.k_max(); ++k) f += lp_project(base, Band::exact, k);
  const double b = besov_norm(f, 0.0, 2.0), n = f.l2_norm();
  EXPECT_GE(b, n / std::sqrt(2.0) * (1.0 - 1e-12));
  EXPECT_LE(b, n * (1.0 + 1e-12));
  const auto blocks = block_lq_norms(f, 2.0);
  EXPECT_EQ(static_cast<int>(blocks.size()), g.k_max() - g.k_min() + 1);
  const SpectralField inside = lp_project(base, Band::at_most, g.k_max() - 1);
  EXPECT_LT(out_of_range_mass(inside), 1e-12 * inside.l2_norm());
  EXPECT_GT(out_of_range_mass(base), 0.0);
}

TEST(Dyadic, LatticeBlocksPartitionLowPass) {
  const GridSpec g = make_grid(4.0 * std::numbers::pi, 32);
  for (double r : {0.0, 0.5, 1.3, 3.7, 8.0, 12.0}) {
    double s = 0.0;
    for (int b = bottom_block(g); b <= g.k_max(); ++b) s += block_weight(g, b, r);
    EXPECT_NEAR(s, rho_le(g.k_max(), r), 1e-14) << r;
    EXPECT_NEAR(block_cumulative(g, g.k_max(), r), rho_le(g.k_max(), r), 1e-14);
  }
}

TEST(Dyadic, ParaproductMasksSplitTheProduct) {
  const GridSpec g = make_grid(4.0 * std::numbers::pi, 32);
  const double alpha = 1.0;
  for (double p : {0.0, 0.5, 2.0, 6.0, 11.0})
    for (double q : {0.0, 0.7, 3.0, 9.0}) {
      const double full = block_cumulative(g, g.k_max(), p) * block_cumulative(g, g.k_max(), q);
      const double split = paraproduct_mask(g, Para::LH, alpha, p, q) + paraproduct_mask(g, Para::HL, alpha, p, q) +
                           paraproduct_mask(g, Para::HH, alpha, p, q);
      EXPECT_NEAR(split, full, 1e-12) << p << "," << q;
      EXPECT_NEAR(paraproduct_mask(g, Para::HL, alpha, p, q),
                  paraproduct_mask(g, Para::alphaL, alpha, p, q) + paraproduct_mask(g, Para::XL, alpha, p, q), 1e-12);
      EXPECT_NEAR(paraproduct_mask(g, Para::R, alpha, p, q),
                  split - paraproduct_mask(g, Para::XL, alpha, p, q), 1e-12);
    }
}

TEST(Dyadic, ParaproductsSumToProduct) {
  const GridSpec g = make_grid(4.0 * std::numbers::pi, 16);
  SpectralField f(g, Side::frequency), h(g, Side::frequency);
  const SpectralField base = test_field(g).to_frequency();
  f = lp_project(base, Band::at_most, g.k_max());
  h = lp_project(base, Band::at_most, g.k_max() - 1);
  SpectralField sum = paraproduct(f, h, Para::LH, 1.0);
  sum += paraproduct(f, h, Para::HL, 1.0);
  sum += paraproduct(f, h, Para::HH, 1.0);
  const SpectralField all =
      padded_product(lp_project(f, Band::at_most, g.k_max()), lp_project(h, Band::at_most, g.k_max()));
  EXPECT_LT((sum - all).l2_norm(), 1e-10 * all.l2_norm());
}

TEST(Dyadic, AlphaBand) {
  EXPECT_TRUE(in_alpha_band(0, 1.0));
  EXPECT_TRUE(in_alpha_band(4, 1.0));
  EXPECT_FALSE(in_alpha_band(5, 1.0));
  EXPECT_TRUE(in_alpha_band(-9, 1.0 / 32.0));
  EXPECT_EQ(parse_para("alphaL"), Para::alphaL);
  EXPECT_EQ(to_string(Para::XL), "XL");
}
