#include "zakharov/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "zakharov/error.hpp"

namespace zakharov {

Rule1D gauss_legendre(int n, double a, double b) {
  require(n >= 1, "gauss_legendre: need at least one node");
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) { p1 = x; p0 = 1.0; }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) { p1 = x; p0 = 1.0; }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = mid - half * x;
    r.nodes[n - 1 - i] = mid + half * x;
    r.weights[i] = r.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = mid;
  return r;
}

Rule1D composite_gauss_legendre(const std::vector<double>& breaks, int per_panel) {
  require(breaks.size() >= 2, "composite rule needs at least one panel");
  Rule1D r;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    require(breaks[p + 1] > breaks[p], "composite rule: break points must increase");
    Rule1D panel = gauss_legendre(per_panel, breaks[p], breaks[p + 1]);
    r.nodes.insert(r.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    r.weights.insert(r.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return r;
}

SphereRule make_sphere_rule(int exact_degree) {
  require(exact_degree >= 0, "sphere rule: degree must be nonnegative");
  SphereRule s;
  s.exact_degree = exact_degree;
  s.n_theta = exact_degree / 2 + 1;
  s.n_phi = exact_degree + 1;
  Rule1D gl = gauss_legendre(s.n_theta);
  s.cos_theta = gl.nodes;
  s.ring_weight = gl.weights;
  s.phi.resize(s.n_phi);
  for (int j = 0; j < s.n_phi; ++j) s.phi[j] = 2.0 * std::numbers::pi * j / s.n_phi;
  const double dphi = 2.0 * std::numbers::pi / s.n_phi;
  for (int i = 0; i < s.n_theta; ++i) {
    const double ct = gl.nodes[i], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < s.n_phi; ++j) {
      s.nodes.push_back({st * std::cos(s.phi[j]), st * std::sin(s.phi[j]), ct});
      s.weights.push_back(gl.weights[i] * dphi);
    }
  }
  return s;
}

}  // namespace zakharov
