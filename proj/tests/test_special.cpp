#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>
#include <cmath>
#include <numbers>

#include "zakharov/quadrature.hpp"
#include "zakharov/special.hpp"

using namespace zakharov;

TEST(Special, SphericalBesselMatchesBoost) {
  std::vector<double> j(13);
  for (double t : {1e-3, 0.05, 0.7, 2.5, 9.0, 17.3, 48.0}) {
    spherical_bessel_j(12, t, j.data());
    for (int k = 0; k <= 12; ++k) {
      const double ref = boost::math::sph_bessel(k, t);
      EXPECT_NEAR(j[k], ref, 1e-12 * std::max(1.0, std::abs(ref)) + 1e-300) << "k=" << k << " t=" << t;
    }
  }
  spherical_bessel_j(3, 0.0, j.data());
  EXPECT_DOUBLE_EQ(j[0], 1.0);
  EXPECT_DOUBLE_EQ(j[1], 0.0);
}

TEST(Special, HalfIntegerBesselMatchesBoost) {
  for (int k = 0; k <= 8; ++k)
    for (double t : {0.3, 1.0, 4.0, 11.0, 30.0}) {
      const double ref = boost::math::cyl_bessel_j(k + 0.5, t);
      EXPECT_NEAR(bessel_j(k + 0.5, t), ref, 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST(Special, RealHarmonicsMatchBoost) {
  const int L = 6;
  std::vector<double> y(harmonic_count(L));
  for (double theta : {0.2, 1.1, 2.7})
    for (double phi : {0.0, 0.9, 4.0}) {
      const Vec3 u{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
      real_spherical_harmonics(L, u, y.data());
      for (int l = 0; l <= L; ++l)
        for (int m = -l; m <= l; ++m) {
          // Boost includes the Condon-Shortley phase; the real basis here does not.
          const int am = std::abs(m);
          const double sign = am % 2 ? -1.0 : 1.0;
          const auto c = boost::math::spherical_harmonic(l, am, theta, phi);
          double ref = m == 0 ? c.real() : std::sqrt(2.0) * sign * (m > 0 ? c.real() : c.imag());
          EXPECT_NEAR(y[harmonic_index(l, m)], ref, 1e-12) << l << "," << m;
        }
    }
}

TEST(Special, HarmonicsOrthonormalUnderSphereRule) {
  const int L = 5;
  const SphereRule s = make_sphere_rule(2 * L);
  const int n = harmonic_count(L);
  std::vector<double> y(n), gram(n * n, 0.0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    real_spherical_harmonics(L, s.nodes[j], y.data());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) gram[a * n + b] += s.weights[j] * y[a] * y[b];
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) EXPECT_NEAR(gram[a * n + b], a == b ? 1.0 : 0.0, 1e-13);
}

TEST(Special, GaussLegendreExactness) {
  const Rule1D r = gauss_legendre(6, 0.0, 2.0);
  for (int p = 0; p <= 11; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
    EXPECT_NEAR(s, std::pow(2.0, p + 1) / (p + 1), 1e-11 * std::pow(2.0, p + 1));
  }
  const Rule1D c = composite_gauss_legendre({0.0, 0.5, 2.0}, 8);
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c.weights[i] * std::exp(c.nodes[i]);
  EXPECT_NEAR(s, std::exp(2.0) - 1.0, 1e-8);
}

TEST(Special, SphereRuleAreaAndDegree) {
  const SphereRule s = make_sphere_rule(9);
  double area = 0.0, z8 = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    area += s.weights[j];
    z8 += s.weights[j] * std::pow(s.nodes[j][2], 8);
  }
  EXPECT_NEAR(area, 4.0 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(z8, 4.0 * std::numbers::pi / 9.0, 1e-12);
  EXPECT_GE(s.exact_degree, 9);
}
