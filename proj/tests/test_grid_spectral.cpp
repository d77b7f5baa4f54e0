#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "zakharov/error.hpp"
#include "zakharov/field_io.hpp"
#include "zakharov/grid.hpp"

using namespace zakharov;

namespace {

SpectralField gaussian(const GridSpec& g, double w = 1.0) {
  return SpectralField::from_function(g, [w](const Vec3& x) {
    return cplx(std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (2.0 * w * w)));
  });
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  const SpectralField pa = a.to_physical(), pb = b.to_physical();
  double m = 0.0;
  for (std::size_t i = 0; i < pa.values().size(); ++i) m = std::max(m, std::abs(pa[i] - pb[i]));
  return m;
}

}  // namespace

TEST(GridSpectral, NodesAndFrequencies) {
  const GridSpec g = make_grid(2.0 * std::numbers::pi, 8);
  EXPECT_DOUBLE_EQ(g.position(4), 0.0);
  EXPECT_DOUBLE_EQ(g.position(0), -std::numbers::pi);
  EXPECT_EQ(g.wavenumber(5), -3);
  EXPECT_EQ(g.fft_index(-3), 5);
  EXPECT_DOUBLE_EQ(g.frequency_step(), 1.0);
  EXPECT_DOUBLE_EQ(g.max_frequency(), 4.0);
}

TEST(GridSpectral, ResolvedDyadicRange) {
  // k_max: largest k with 1.6 2^k <= N/2 dk; k_min = ceil(log2 dk) - 1.
  const GridSpec g = make_grid(4.0 * std::numbers::pi, 64);
  EXPECT_EQ(g.k_max(), 3);
  EXPECT_EQ(g.k_min(), -2);
  EXPECT_LE(1.6 * std::ldexp(1.0, g.k_max()), g.max_frequency());
  EXPECT_GT(1.6 * std::ldexp(1.0, g.k_max() + 1), g.max_frequency());
}

TEST(GridSpectral, TransformRoundTripAndParseval) {
  const GridSpec g = make_grid(10.0, 24);
  const SpectralField f = SpectralField::from_function(g, [](const Vec3& x) {
    return cplx(std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1]) * std::cos(x[2]), x[0] * std::exp(-x[0] * x[0] - x[2] * x[2]));
  });
  const SpectralField c = f.to_frequency();
  EXPECT_LT(max_abs_diff(c.to_physical(), f), 1e-13);
  double quad = 0.0;
  for (const auto& v : f.values()) quad += std::norm(v);
  quad *= g.cell_volume();
  EXPECT_NEAR(c.l2_norm_squared(), quad, 1e-12 * quad);
  EXPECT_NEAR(f.l2_norm_squared(), quad, 1e-12 * quad);
}

TEST(GridSpectral, PlaneWaveCoefficient) {
  const GridSpec g = make_grid(2.0 * std::numbers::pi, 16);
  const SpectralField f = SpectralField::from_function(g, [](const Vec3& x) { return std::polar(1.0, 3.0 * x[1]); });
  const SpectralField c = f.to_frequency();
  const std::size_t idx = g.index(0, g.fft_index(3), 0);
  EXPECT_NEAR(std::abs(c[idx] - cplx(1.0)), 0.0, 1e-13);
  EXPECT_NEAR(c.l2_norm_squared(), g.volume(), 1e-9);
}

TEST(GridSpectral, FreeSchrodingerGaussianClosedForm) {
  // e^{it Delta} e^{-|x|^2/2} = (1 + 2it)^{-3/2} exp(-|x|^2 / (2 (1 + 2it))).
  const GridSpec g = make_grid(8.0 * std::numbers::pi, 64);
  const double t = 0.5;
  const SpectralField u = schrodinger_propagate(gaussian(g).to_frequency(), t);
  const cplx a = 1.0 + cplx(0.0, 2.0 * t);
  const SpectralField exact = SpectralField::from_function(g, [a](const Vec3& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return std::pow(a, -1.5) * std::exp(-r2 / (2.0 * a));
  });
  EXPECT_LT((u - exact.to_frequency()).l2_norm() / exact.l2_norm(), 1e-6);
}

TEST(GridSpectral, HalfWaveOnLatticeMode) {
  const GridSpec g = make_grid(2.0 * std::numbers::pi, 16);
  const SpectralField f = SpectralField::from_function(g, [](const Vec3& x) { return std::polar(1.0, 3.0 * x[0] + 4.0 * x[2]); });
  const double t = 0.7, alpha = 0.5;
  const SpectralField w = half_wave_propagate(f.to_frequency(), t, alpha).to_physical();
  const SpectralField fp = f.to_physical();
  for (std::size_t i = 0; i < w.values().size(); i += 37)
    EXPECT_NEAR(std::abs(w[i] - fp[i] * std::polar(1.0, alpha * t * 5.0)), 0.0, 1e-12);
}

TEST(GridSpectral, MultipliersOnPlaneWave) {
  const GridSpec g = make_grid(2.0 * std::numbers::pi, 16);
  const SpectralField f = SpectralField::from_function(g, [](const Vec3& x) { return std::polar(1.0, 3.0 * x[0] + 4.0 * x[2]); });
  EXPECT_NEAR(abs_grad(f).l2_norm(), 5.0 * f.l2_norm(), 1e-9);
  EXPECT_NEAR(bracket_grad(f).l2_norm(), std::sqrt(26.0) * f.l2_norm(), 1e-9);
  EXPECT_NEAR(gradient_norm_squared(f), 25.0 * g.volume(), 1e-7);
  EXPECT_NEAR(h1_norm(f), std::sqrt(26.0 * g.volume()), 1e-9);
  EXPECT_LT((inverse_abs_grad(abs_grad(f)) - f.to_frequency()).l2_norm(), 1e-10);
}

TEST(GridSpectral, ZeroModeGuard) {
  const GridSpec g = make_grid(2.0 * std::numbers::pi, 8);
  const SpectralField one = SpectralField::from_function(g, [](const Vec3&) { return cplx(1.0); });
  EXPECT_THROW(inverse_abs_grad(one), PreconditionError);
  RadialSymbol m{[](double r) { return cplx(1.0 / r); }, cplx(2.0)};
  EXPECT_NEAR(apply_radial_multiplier(one, m).l2_norm(), 2.0 * one.l2_norm(), 1e-12);
}

TEST(GridSpectral, LqNorms) {
  const GridSpec g = make_grid(3.0, 8);
  const SpectralField one = SpectralField::from_function(g, [](const Vec3&) { return cplx(2.0); });
  EXPECT_NEAR(lq_norm(one, 2.0), 2.0 * std::sqrt(27.0), 1e-12);
  EXPECT_NEAR(lq_norm(one, 3.0), 2.0 * 3.0, 1e-12);
  EXPECT_NEAR(lq_norm(one, INFINITY), 2.0, 1e-14);
}

TEST(GridSpectral, PaddedProductIsExactForBandLimitedFactors) {
  const GridSpec g = make_grid(2.0 * std::numbers::pi, 16);
  const SpectralField a = SpectralField::from_function(g, [](const Vec3& x) { return std::polar(1.0, 2.0 * x[0]) + 0.5; });
  const SpectralField b = SpectralField::from_function(g, [](const Vec3& x) { return cplx(std::cos(3.0 * x[1]), std::sin(x[2])); });
  const SpectralField exact = SpectralField::from_function(g, [](const Vec3& x) {
    return (std::polar(1.0, 2.0 * x[0]) + 0.5) * cplx(std::cos(3.0 * x[1]), std::sin(x[2]));
  });
  EXPECT_LT((padded_product(a, b) - exact.to_frequency()).l2_norm(), 1e-10);
  EXPECT_LT((collocation_product(a, b) - exact.to_frequency()).l2_norm(), 1e-10);
  const SpectralField conj_exact = SpectralField::from_function(g, [](const Vec3& x) {
    return (std::polar(1.0, 2.0 * x[0]) + 0.5) * std::conj(cplx(std::cos(3.0 * x[1]), std::sin(x[2])));
  });
  EXPECT_LT((padded_product(a, b, true) - conj_exact.to_frequency()).l2_norm(), 1e-10);
}

TEST(GridSpectral, FieldFileRoundTrip) {
  const GridSpec g = make_grid(5.0, 8);
  const SpectralField f = gaussian(g, 0.8).to_frequency();
  const auto path = std::filesystem::temp_directory_path() / "zk_grid_roundtrip.zkrf";
  save_field(path, f);
  const SpectralField h = load_field(path);
  EXPECT_EQ(h.grid(), g);
  EXPECT_EQ(h.side(), Side::frequency);
  EXPECT_LT((h - f).l2_norm(), 1e-15);
  std::filesystem::remove(path);
}

TEST(GridSpectral, MismatchedGridsRejected) {
  const SpectralField a(make_grid(1.0, 8)), b(make_grid(1.0, 16));
  EXPECT_THROW(require_same_grid(a, b), PreconditionError);
}
