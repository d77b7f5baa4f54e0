#include "zakharov/special.hpp"

#include <cmath>
#include <numbers>

#include "zakharov/error.hpp"

namespace zakharov {

void spherical_bessel_j(int kmax, double t, double* out) {
  require(kmax >= 0, "spherical_bessel_j: negative order");
  if (t == 0.0) {
    out[0] = 1.0;
    for (int k = 1; k <= kmax; ++k) out[k] = 0.0;
    return;
  }
  const double j0 = std::sin(t) / t;
  const double j1 = std::sin(t) / (t * t) - std::cos(t) / t;
  if (t > kmax) {
    out[0] = j0;
    if (kmax >= 1) out[1] = j1;
    for (int k = 1; k < kmax; ++k) out[k + 1] = (2.0 * k + 1.0) / t * out[k] - out[k - 1];
    return;
  }
  const int start = kmax + 20 + static_cast<int>(std::sqrt(40.0 * (kmax + 1)) + t);
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[start] = 1e-30;
  for (int n = start; n >= 1; --n) {
    f[n - 1] = (2.0 * n + 1.0) / t * f[n] - f[n + 1];
    if (std::abs(f[n - 1]) > 1e200)
      for (int i = n - 1; i <= start; ++i) f[i] *= 1e-200;
  }
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / f[0] : j1 / f[1];
  for (int k = 0; k <= kmax; ++k) out[k] = f[k] * scale;
}

double bessel_j(double mu, double t) {
  require(t > 0.0, "bessel_j: argument must be positive");
  const double k_real = mu - 0.5;
  const int k = static_cast<int>(std::lround(k_real));
  require(k >= 0 && std::abs(k_real - k) < 1e-12, "bessel_j: order must be a half integer >= 1/2");
  std::vector<double> j(k + 1);
  spherical_bessel_j(k, t, j.data());
  return std::sqrt(2.0 * t / std::numbers::pi) * j[k];
}

void normalized_legendre(int lmax, double x, std::vector<double>& p) {
  p.assign(static_cast<std::size_t>((lmax + 1) * (lmax + 2) / 2), 0.0);
  auto at = [](int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); };
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  p[0] = 0.5 / std::sqrt(std::numbers::pi);
  for (int m = 1; m <= lmax; ++m) p[at(m, m)] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * p[at(m - 1, m - 1)];
  for (int m = 0; m < lmax; ++m) p[at(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * p[at(m, m)];
  for (int m = 0; m <= lmax; ++m) {
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m) /
                                 (4.0 * (l - 1) * (l - 1) - 1.0));
      p[at(l, m)] = a * (x * p[at(l - 1, m)] - b * p[at(l - 2, m)]);
    }
  }
}

void real_spherical_harmonics(int lmax, const Vec3& u, double* out) {
  std::vector<double> p;
  normalized_legendre(lmax, u[2], p);
  const double rho = std::hypot(u[0], u[1]);
  double c1 = 1.0, s1 = 0.0;
  if (rho > 0.0) {
    c1 = u[0] / rho;
    s1 = u[1] / rho;
  }
  std::vector<double> cm(lmax + 1), sm(lmax + 1);
  cm[0] = 1.0;
  sm[0] = 0.0;
  for (int m = 1; m <= lmax; ++m) {
    cm[m] = cm[m - 1] * c1 - sm[m - 1] * s1;
    sm[m] = sm[m - 1] * c1 + cm[m - 1] * s1;
  }
  const double r2 = std::numbers::sqrt2;
  for (int l = 0; l <= lmax; ++l) {
    const std::size_t base = static_cast<std::size_t>(l * (l + 1) / 2);
    out[harmonic_index(l, 0)] = p[base];
    for (int m = 1; m <= l; ++m) {
      out[harmonic_index(l, m)] = r2 * p[base + m] * cm[m];
      out[harmonic_index(l, -m)] = r2 * p[base + m] * sm[m];
    }
  }
}

}  // namespace zakharov
