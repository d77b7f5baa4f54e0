#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "zakharov/aniso.hpp"
#include "zakharov/diagnostics.hpp"
#include "zakharov/error.hpp"
#include "zakharov/fit.hpp"
#include "zakharov/good_frame.hpp"
#include "zakharov/report_io.hpp"
#include "zakharov/wave_aniso.hpp"
#include "zakharov/weighted_norms.hpp"

using namespace zakharov;

namespace {

SpectralField gaussian(const GridSpec& g, double width) {
  return SpectralField::from_function(g, [=](const Vec3& x) {
    return cplx(std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (2.0 * width * width)));
  });
}

}  // namespace

// ---- fits and reports ----

TEST(Fit, ExactLine) {
  const LineFit f = fit_line({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.slope_se, 0.0, 1e-12);
  EXPECT_EQ(f.points, 4u);
}

TEST(Fit, NoisyLineStandardError) {
  // Residuals +-e alternate, so the slope estimate stays exact and its standard error is known.
  std::vector<double> x, y;
  for (int i = 0; i < 6; ++i) {
    x.push_back(i);
    y.push_back(0.5 * i + (i % 2 ? 0.1 : -0.1));
  }
  const LineFit f = fit_line(x, y);
  double sxx = 0.0, rss = 0.0;
  for (int i = 0; i < 6; ++i) sxx += (i - 2.5) * (i - 2.5);
  for (int i = 0; i < 6; ++i) rss += std::pow(y[i] - f.intercept - f.slope * x[i], 2);
  EXPECT_NEAR(f.slope_se, std::sqrt(rss / 4.0 / sxx), 1e-14);
}

TEST(Fit, LogLogPowerLaw) {
  std::vector<double> x{1.0, 2.0, 4.0, 8.0}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.5));
  const LineFit f = fit_loglog(x, y);
  EXPECT_NEAR(f.slope, -1.5, 1e-13);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
  EXPECT_THROW(fit_loglog({1.0, 2.0}, {1.0, -1.0}), Error);
}

TEST(Fit, GaussianMomentNormMatchesGammaOracle) {
  for (double beta : {1.0, 2.0, 3.5, 8.0, 16.0}) {
    const double oracle =
        std::pow(std::pow(2.0, beta / 2.0) * boost::math::tgamma((beta + 1.0) / 2.0) / std::sqrt(std::numbers::pi),
                 1.0 / beta);
    EXPECT_NEAR(gaussian_moment_norm(beta), oracle, 1e-12 * oracle) << beta;
  }
  EXPECT_NEAR(gaussian_moment_norm(2.0), 1.0, 1e-14);
}

TEST(Fit, ReportJsonRoundTripAndRecompute) {
  FitReport r;
  r.experiment = "demo";
  r.x = {1.0, 2.0, 4.0};
  r.y = {1.0, 0.5, 0.25};
  r.upper = -0.9;
  r.lower = -1.1;
  r.notes = {"n"};
  EXPECT_TRUE(r.recompute());
  EXPECT_NEAR(r.checked_value, -1.0, 1e-13);
  const FitReport back = FitReport::from_json(r.to_json());
  EXPECT_EQ(back.experiment, "demo");
  EXPECT_EQ(back.x, r.x);
  EXPECT_EQ(back.pass, r.pass);
  EXPECT_DOUBLE_EQ(back.fit.slope, r.fit.slope);
  EXPECT_EQ(r.to_csv().substr(0, r.to_csv().find('\n')), "x,y,y_se");
}

TEST(ReportIo, NormCsv) {
  NormRow row;
  row.run_id = "a";
  row.norm_name = "X_T";
  row.value = 0.5;
  const std::string csv = norm_csv({row});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "run_id,norm_name,mu,q,s,sigma,T,value,truncation_diagnostic");
  EXPECT_NE(csv.find("a,X_T"), std::string::npos);
}

// ---- moment and tail estimates ----

TEST(Moments, StandardErrorHalvesWithFourTimesTheDraws) {
  RandomModel m;
  m.seed = 13;
  const SeRate r = se_rate_check([&](std::uint64_t d) { return m.sample("se", d, {0, 0, 0}); }, 4000);
  EXPECT_GT(r.ratio, 1.8);
  EXPECT_LT(r.ratio, 2.2);
}

TEST(Moments, GaussianTailRate) {
  // P(|Z| > lambda) ~ exp(-lambda^2 / 2): rate 1/2 for unit coefficients.
  RandomModel m;
  m.seed = 2;
  const std::vector<double> c{1.0};
  const auto samples = linear_combination_samples(c, m, 200000);
  const FitReport r = tail_probability_mc(samples, 1.0, {1.5, 2.0, 2.5, 3.0, 3.5});
  EXPECT_TRUE(r.pass) << r.checked_value;
}

TEST(Moments, LargeDeviationExponent) {
  RandomModel m;
  m.seed = 3;
  std::vector<double> c(20);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = 1.0 / (1.0 + k);
  for (Family f : {Family::gaussian, Family::bounded}) {
    m.family = f;
    const FitReport r = large_deviation_mc(c, m, {2.0, 4.0, 8.0, 16.0}, 20000);
    EXPECT_TRUE(r.pass) << to_string(f) << " " << r.fit.slope;
    EXPECT_LT(r.fit.slope, 0.55);
  }
}

// ---- dispersive and anisotropic norms ----

TEST(Dispersive, Exponent) {
  EXPECT_NEAR(dispersive_exponent(2.0, 6.0, 0.0), -0.5, 1e-15);
  EXPECT_NEAR(dispersive_exponent(4.0, 4.0, 0.0), -0.5, 1e-15);
  EXPECT_NEAR(dispersive_exponent(2.0, 6.0, 0.25), -0.25, 1e-15);
}

TEST(Dispersive, FreeSchrodingerLrMatchesGaussianClosedForm) {
  // |e^{it Delta} e^{-|x|^2/2}| = s^{-3/4} exp(-|x|^2 / 2s), s = 1 + 4t^2.
  const GridSpec g = make_grid(8.0 * std::numbers::pi, 48);
  const SpectralField u = gaussian(g, 1.0);
  for (double t : {0.5, 2.0, 8.0}) {
    for (double r : {2.0, 6.0}) {
      const double s = 1.0 + 4.0 * t * t;
      const double exact = std::pow(s, -0.75) * std::pow(2.0 * std::numbers::pi * s / r, 1.5 / r);
      EXPECT_NEAR(free_schrodinger_lr(u, t, r) / exact, 1.0, 1e-6) << t << " " << r;
    }
  }
}

TEST(Dispersive, SupportRadius) {
  const GridSpec g = make_grid(8.0 * std::numbers::pi, 32);
  // exp(-R^2 / 2) = 1e-6.
  EXPECT_NEAR(support_radius(gaussian(g, 1.0), 1e-6), std::sqrt(2.0 * std::log(1e6)), g.spacing() * 1.8);
}

TEST(Aniso, RadialFieldFactorizes) {
  // For radial f, ||f||_{L^q_r L^s_theta} = (4 pi)^{1/s} ||f||_{L^q(r^2 dr)} and the latter is
  // (4 pi)^{-1/q} ||f||_{L^q(R^3)}.
  const GridSpec g = make_grid(8.0 * std::numbers::pi, 32);
  const SpectralField f = gaussian(g, 1.5);
  const AngularQuadrature quad = make_adaptive_quadrature(12.0, effective_frequency(f));
  const double q = 4.0, s = 6.0;
  const double lq_r3 = std::pow(std::pow(std::numbers::pi * 2.0 * 1.5 * 1.5 / q, 1.5), 1.0 / q);
  const double expect = std::pow(4.0 * std::numbers::pi, 1.0 / s - 1.0 / q) * lq_r3;
  EXPECT_NEAR(aniso_norm(f, q, s, quad) / expect, 1.0, 1e-6);
}

TEST(Aniso, RequiredDegreeGrows) {
  EXPECT_GE(required_sphere_degree(2.0, 10.0), required_sphere_degree(2.0, 1.0));
  EXPECT_GE(required_sphere_degree(4.0, 5.0), required_sphere_degree(2.0, 5.0));
}

TEST(WeightedNorms, TrapezoidAndExponents) {
  EXPECT_NEAR(trapezoid({0.0, 1.0, 3.0}, {0.0, 1.0, 3.0}), 4.5, 1e-15);
  const WeightedNormSpec w(0.05, 0.05, 2.0);
  EXPECT_NEAR(w.sigma(), 0.45, 1e-15);
  EXPECT_NEAR(1.0 / w.q_eps(), 0.25 + 0.05 / 3.0, 1e-15);
  EXPECT_NEAR(w.angular_exponent(), 2.0 / 0.95, 1e-15);
}

TEST(WaveAniso, AdmissibilityAndRefusal) {
  EXPECT_TRUE(wave_aniso_admissible(4.0, 4.0));
  EXPECT_FALSE(wave_aniso_admissible(2.0, 4.0));
  EXPECT_NEAR(wave_aniso_regularity(4.0, 4.0), -0.5, 1e-15);
  const GridSpec g = make_grid(8.0 * std::numbers::pi, 16);
  const GoodFrame frame = build_good_frame(1, 1);
  WaveAnisoConfig c;
  c.p = 2.0;
  c.q = 4.0;
  EXPECT_THROW(WaveAnisoNorm(gaussian(g, 1.0), frame, c), PreconditionError);
}

TEST(WaveAniso, RadialSignPatternsAgree) {
  // With a degree-0 frame each block carries one sign, and the norm is assembled from per-block
  // norms, so every sign pattern gives the same value.
  const GridSpec g = make_grid(8.0 * std::numbers::pi, 16);
  const GoodFrame frame = build_good_frame(0, 1);
  WaveAnisoConfig c;
  c.t_extent = 10.0;
  c.r_max = 15.0;
  const WaveAnisoNorm norm(gaussian(g, 1.0), frame, c);
  const auto all = wave_aniso_sign_patterns(norm);
  ASSERT_EQ(all.size(), std::size_t{1} << norm.blocks().size());
  for (double v : all) EXPECT_NEAR(v, all.front(), 1e-10 * all.front());
  EXPECT_GT(all.front(), 0.0);
}
