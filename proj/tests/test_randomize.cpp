#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "zakharov/diagnostics.hpp"
#include "zakharov/dyadic.hpp"
#include "zakharov/error.hpp"
#include "zakharov/fourier_bessel.hpp"
#include "zakharov/good_frame.hpp"
#include "zakharov/random.hpp"
#include "zakharov/randomize_phys.hpp"
#include "zakharov/sampler.hpp"

using namespace zakharov;

namespace {

SpectralField smooth_field(const GridSpec& g) {
  return SpectralField::from_function(g, [](const Vec3& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return cplx((1.0 + x[0] + x[1] * x[2]) * std::exp(-r2 / 2.0));
  });
}

}  // namespace

// ---- coefficient laws ----

TEST(RandomModel, CounterBasedAndOrderIndependent) {
  RandomModel m;
  m.seed = 42;
  const double a = m.sample("phys", 3, {1, -2, 0});
  EXPECT_EQ(a, m.sample("phys", 3, {1, -2, 0}));
  EXPECT_NE(a, m.sample("phys", 4, {1, -2, 0}));
  EXPECT_NE(a, m.sample("ang", 3, {1, -2, 0}));
  RandomModel other = m;
  other.seed = 43;
  EXPECT_NE(a, other.sample("phys", 3, {1, -2, 0}));
}

TEST(RandomModel, GaussianMoments) {
  RandomModel m;
  m.seed = 1;
  m.variance = 2.0;
  const std::size_t n = 200000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    const double x = m.sample("t", d, {0, 0, 0});
    s1 += x;
    s2 += x * x;
    s4 += x * x * x * x;
  }
  EXPECT_NEAR(s1 / n, 0.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(s2 / n, 2.0, 0.03);
  EXPECT_NEAR(s4 / n, 12.0, 0.4);  // E X^4 = 3 variance^2
  EXPECT_DOUBLE_EQ(m.second_moment(), 2.0);
}

TEST(RandomModel, BoundedIsTwoPoint) {
  RandomModel m;
  m.family = Family::bounded;
  m.bound = 0.5;
  int plus = 0;
  for (std::uint64_t d = 0; d < 10000; ++d) {
    const double x = m.sample("t", d, {0, 0, 0});
    ASSERT_TRUE(x == 0.5 || x == -0.5);
    plus += x > 0;
  }
  EXPECT_NEAR(plus / 10000.0, 0.5, 0.03);
  EXPECT_DOUBLE_EQ(m.second_moment(), 0.25);
}

TEST(RandomModel, JsonRoundTrip) {
  RandomModel m;
  m.family = Family::bounded;
  m.seed = 99;
  m.bound = 3.0;
  const RandomModel r = RandomModel::from_json(m.to_json());
  EXPECT_EQ(r.family, m.family);
  EXPECT_EQ(r.seed, m.seed);
  EXPECT_EQ(r.bound, m.bound);
  EXPECT_THROW(parse_family("cauchy"), PreconditionError);
}

// ---- physical-space randomization ----

TEST(PhysicalRandomization, PartitionOfUnity) {
  const GridSpec g = make_grid(8.0, 16);
  const PartitionOfUnity pou(g);
  EXPECT_EQ(pou.count(), 512u);
  const auto ones = pou.combine([](const Translate&) { return 1.0; });
  for (double v : ones) EXPECT_NEAR(v, 1.0, 1e-14);
  // psi_k vanishes at distance >= 2 from k.
  const Translate k{0, 0, 0};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 d = pou.displacement(g.node(i), k);
    if (std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) >= 2.0) EXPECT_EQ(pou.psi(k, i), 0.0);
  }
  EXPECT_EQ(unit_bump(0.5), 1.0);
  EXPECT_EQ(unit_bump(2.0), 0.0);
}

TEST(PhysicalRandomization, SmallBoxRejected) { EXPECT_THROW(PartitionOfUnity(make_grid(3.0, 8)), PreconditionError); }

TEST(PhysicalRandomization, UnitMultipliersReproduceInput) {
  const GridSpec g = make_grid(8.0, 16);
  const PartitionOfUnity pou(g);
  const SpectralField f = smooth_field(g);
  const SpectralField h = randomize_physical_with(f, pou, [](const Translate&) { return 1.0; });
  EXPECT_LT((h - f).l2_norm(), 1e-13 * f.l2_norm());
}

TEST(PhysicalRandomization, DeterministicPerDraw) {
  const GridSpec g = make_grid(8.0, 16);
  const PartitionOfUnity pou(g);
  const SpectralField f = smooth_field(g);
  RandomModel m;
  m.seed = 4;
  const SpectralField a = randomize_physical(f, pou, m, 2), b = randomize_physical(f, pou, m, 2);
  EXPECT_EQ((a - b).l2_norm(), 0.0);
  EXPECT_GT((a - randomize_physical(f, pou, m, 3)).l2_norm(), 0.0);
}

TEST(PhysicalRandomization, SecondMomentMatchesOracle) {
  const GridSpec g = make_grid(8.0, 16);
  const PartitionOfUnity pou(g);
  const SpectralField f = smooth_field(g);
  RandomModel m;
  m.seed = 8;
  // Independent oracle: E||f^w||^2 = E X^2 h^3 sum_x |f(x)|^2 sum_k psi_k(x)^2, psi summed directly.
  const SpectralField fp = f.to_physical();
  double oracle = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double s = 0.0;
    for (const auto& k : pou.translates()) {
      const double p = pou.psi(k, i);
      s += p * p;
    }
    oracle += std::norm(fp[i]) * s;
  }
  oracle *= g.cell_volume();
  const MomentCheck mc = physical_moment_mc(f, pou, m, 100);
  EXPECT_NEAR(mc.expected, oracle, 1e-10 * oracle);
  EXPECT_LT(std::abs(mc.z), 3.0);
}

// ---- good frame ----

TEST(GoodFrame, OrthogonalMixingAndCertificate) {
  const GoodFrame f = build_good_frame(6, 5);
  ASSERT_EQ(f.mixing.size(), 7u);
  for (const auto& o : f.mixing)
    EXPECT_LT((o * o.transpose() - Eigen::MatrixXd::Identity(o.rows(), o.cols())).norm(), 1e-12);
  // Orthonormal b_{k,l} have unit L^2(S^2) norm, so the q = 2 ratio alone is 1 / sqrt 2.
  EXPECT_GE(f.c_frame, 1.0 / std::sqrt(2.0) - 1e-12);
  EXPECT_LE(f.c_frame, f.cap);
  EXPECT_GE(f.attempts, 1);
  EXPECT_LE(f.attempts, 5);
}

TEST(GoodFrame, CertificateNormsAgreeWithDirectQuadrature) {
  const GoodFrame f = build_good_frame(3, 2);
  const SphereRule s = make_sphere_rule(3 * 16 + 1);
  std::vector<double> b(f.mode_count());
  std::vector<double> l4(f.mode_count(), 0.0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    f.evaluate(s.nodes[j], b.data());
    for (int i = 0; i < f.mode_count(); ++i) l4[i] += s.weights[j] * std::pow(b[i], 4);
  }
  for (int k = 0; k <= 3; ++k) {
    double worst = 0.0;
    for (int l = 0; l <= 2 * k; ++l) worst = std::max(worst, std::pow(l4[GoodFrame::mode_index(k, l)], 0.25));
    EXPECT_NEAR(f.certificates[k].max_lq[1] / worst, 1.0, 1e-9) << k;
  }
}

TEST(GoodFrame, ImpossibleCapFails) {
  FrameOptions o;
  o.cap = 0.5;
  EXPECT_THROW(build_good_frame(2, 1, o), PreconditionError);
}

TEST(GoodFrame, SaveLoadRoundTrip) {
  const GoodFrame f = build_good_frame(4, 17);
  const auto path = std::filesystem::temp_directory_path() / "zk_frame.zkgf";
  save_frame(path, f);
  const GoodFrame h = load_frame(path);
  EXPECT_EQ(h.max_degree, 4);
  EXPECT_EQ(h.seed, 17u);
  EXPECT_DOUBLE_EQ(h.c_frame, f.c_frame);
  for (int k = 0; k <= 4; ++k) EXPECT_EQ((h.mixing[k] - f.mixing[k]).norm(), 0.0);
  std::filesystem::remove(path);
}

// ---- angular randomization ----

class AngularFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    grid = new GridSpec(make_grid(8.0 * std::numbers::pi, 32));
    frame = new GoodFrame(build_good_frame(2, 3));
    field = new SpectralField(smooth_field(*grid).to_frequency());
    randomizer = new AngularRandomizer(*field, *frame);
  }
  static void TearDownTestSuite() {
    delete randomizer;
    delete field;
    delete frame;
    delete grid;
  }
  static GridSpec* grid;
  static GoodFrame* frame;
  static SpectralField* field;
  static AngularRandomizer* randomizer;
};
GridSpec* AngularFixture::grid = nullptr;
GoodFrame* AngularFixture::frame = nullptr;
SpectralField* AngularFixture::field = nullptr;
AngularRandomizer* AngularFixture::randomizer = nullptr;

TEST_F(AngularFixture, AnalyzeSynthesizeRoundTrip) {
  SpectralField kept(*grid, Side::frequency);
  for (int m = grid->k_min(); m <= grid->k_max(); ++m) kept += lp_project(*field, Band::exact, m);
  const SpectralField one = randomizer->with_signs([](int, int, int) { return 1.0; });
  EXPECT_LT((one - kept).l2_norm() / kept.l2_norm(), 1e-4);
  EXPECT_NEAR(randomizer->dropped_mass(), (*field - kept).l2_norm(), 1e-10 * field->l2_norm());
}

TEST_F(AngularFixture, LinearInSigns) {
  auto s = [](int m, int k, int l) { return (m + 2 * k + l) % 3 == 0 ? 1.0 : -0.5; };
  const SpectralField a = randomizer->with_signs(s);
  const SpectralField b = randomizer->with_signs([&](int m, int k, int l) { return -2.0 * s(m, k, l); });
  EXPECT_LT((b + 2.0 * a).l2_norm(), 1e-12 * a.l2_norm());
}

TEST_F(AngularFixture, ExpectedEnergyMatchesMonteCarlo) {
  RandomModel m;
  m.seed = 5;
  for (Family fam : {Family::gaussian, Family::bounded}) {
    m.family = fam;
    const MomentCheck mc = angular_moment_mc(*randomizer, m, 100);
    EXPECT_LT(std::abs(mc.z), 3.0) << to_string(fam);
    EXPECT_NEAR(mc.expected, randomizer->expected_norm_squared(1.0), 1e-12 * mc.expected);
  }
}

TEST(AngularRandomization, BesselEvaluationMatchesBlock) {
  // g_0 = P_0 f evaluated by Fourier-Bessel quadrature against trigonometric interpolation; the
  // lattice sum converges to the continuum block as the box grows, so a wide box is used.
  const GridSpec g = make_grid(16.0 * std::numbers::pi, 64);
  const SpectralField f = smooth_field(g).to_frequency();
  const GoodFrame frame = build_good_frame(2, 3);
  const SpectralField block = lp_project(f, Band::exact, 0);
  const FourierBesselCoeffs c = fb_analyze_field(f, 0, frame);
  const FieldSampler sampler(block, SampleMethod::exact);
  const double scale = lq_norm(block, INFINITY);
  for (const Vec3& y : {Vec3{0.3, 0.1, -0.2}, Vec3{1.5, -0.7, 0.4}, Vec3{-2.0, 0.5, 1.0}})
    EXPECT_LT(std::abs(fb_evaluate_physical(c, frame, y) - sampler(y)), 1e-4 * scale);
}

TEST(AngularRandomization, RadialInputIsDegenerate) {
  const GridSpec g = make_grid(8.0 * std::numbers::pi, 32);
  const SpectralField f = SpectralField::from_function(g, [](const Vec3& x) {
    return cplx(std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0));
  });
  const GoodFrame frame = build_good_frame(0, 1);
  const AngularRandomizer ar(f, frame);
  const auto s = ar.summary();
  EXPECT_NEAR(ar.degree_zero_fraction(), 1.0, 1e-12);
  EXPECT_TRUE(s.contains("note"));
}

TEST(AngularRandomization, Prefactor) {
  const double c = std::pow(2.0 * std::numbers::pi, -1.5);
  EXPECT_NEAR(std::abs(fourier_bessel_prefactor(0) - cplx(c)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(fourier_bessel_prefactor(1) - cplx(0.0, c)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(fourier_bessel_prefactor(2) + cplx(c)), 0.0, 1e-15);
}
