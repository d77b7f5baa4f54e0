#include "zakharov/aniso.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "zakharov/dyadic.hpp"
#include "zakharov/error.hpp"

namespace zakharov {

int AngularQuadrature::min_degree() const {
  int d = rules.empty() ? 0 : rules.front().exact_degree;
  for (const auto& r : rules) d = std::min(d, r.exact_degree);
  return d;
}

namespace {

Rule1D radial_rule(double r_max, double panel, int per_panel) {
  require(r_max > 0.0 && panel > 0.0, "angular quadrature: radius and panel must be positive");
  const int panels = std::max(1, static_cast<int>(std::ceil(r_max / panel - 1e-12)));
  std::vector<double> breaks(panels + 1);
  for (int p = 0; p <= panels; ++p) breaks[p] = r_max * p / panels;
  Rule1D r = composite_gauss_legendre(breaks, per_panel);
  for (std::size_t i = 0; i < r.size(); ++i) r.weights[i] *= r.nodes[i] * r.nodes[i];
  return r;
}

}  // namespace

AngularQuadrature make_angular_quadrature(double r_max, int sphere_degree, double panel, int per_panel) {
  AngularQuadrature q;
  q.radial = radial_rule(r_max, panel, per_panel);
  q.rules.push_back(make_sphere_rule(sphere_degree));
  q.shell_rule.assign(q.radial.size(), 0);
  return q;
}

int required_sphere_degree(double xi_eff, double r) {
  const double z = xi_eff * r;
  return 2 * static_cast<int>(std::ceil(z + 2.0 * std::cbrt(z) + 2.0));
}

AngularQuadrature make_adaptive_quadrature(double r_max, double xi_eff, int min_degree) {
  require(xi_eff > 0.0, "adaptive quadrature: effective frequency must be positive");
  AngularQuadrature q;
  q.radial = radial_rule(r_max, std::min(0.5, 2.0 / xi_eff), 4);
  std::map<int, int> by_degree;
  for (double r : q.radial.nodes) {
    int d = std::max(min_degree, required_sphere_degree(xi_eff, r));
    d = 4 * ((d + 3) / 4) + 1;
    auto it = by_degree.find(d);
    if (it == by_degree.end()) {
      it = by_degree.emplace(d, static_cast<int>(q.rules.size())).first;
      q.rules.push_back(make_sphere_rule(d));
    }
    q.shell_rule.push_back(it->second);
  }
  return q;
}

double effective_frequency(const SpectralField& f) {
  const SpectralField c = f.to_frequency();
  const auto& norms = c.grid().frequency_norms();
  std::vector<std::pair<double, double>> mass;
  double total = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const double m = std::norm(c[i]);
    if (m > 0.0) {
      mass.emplace_back(norms[i], m);
      total += m;
    }
  }
  if (total == 0.0) return 0.0;
  std::sort(mass.begin(), mass.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double tail = 0.0;
  for (const auto& [r, m] : mass) {
    tail += m;
    if (tail > 1e-12 * total) return r;
  }
  return 0.0;
}

double aniso_norm(const SpectralField& f, double q, double s, const AngularQuadrature& quad,
                  const AnisoOptions& options) {
  require(q >= 1.0 && s >= 1.0, "aniso_norm: exponents must be >= 1");
  require(!quad.radial.nodes.empty(), "aniso_norm: empty radial rule");
  const double r_top = *std::max_element(quad.radial.nodes.begin(), quad.radial.nodes.end());
  require(r_top <= 0.5 * f.grid().box_length() * (1 + 1e-12), "aniso_norm: radial nodes exceed L/2");
  const double xi = effective_frequency(f);
  if (xi == 0.0 && f.to_frequency()[0] == cplx(0.0)) return 0.0;
  for (std::size_t i = 0; i < quad.radial.size(); ++i) {
    const int need = required_sphere_degree(xi, quad.radial.nodes[i]);
    if (quad.sphere(i).exact_degree < need)
      throw PreconditionError("aniso_norm: sphere rule of degree " + std::to_string(quad.sphere(i).exact_degree) +
                              " cannot resolve angular content of degree " + std::to_string(need) + " at r = " +
                              std::to_string(quad.radial.nodes[i]));
  }
  FieldSampler sampler(f, options.method);
  const std::size_t shells = quad.radial.size();
  std::vector<double> angular(shells);
  for (std::size_t rule = 0; rule < quad.rules.size(); ++rule) {
    std::vector<double> radii;
    std::vector<std::size_t> which;
    for (std::size_t i = 0; i < shells; ++i)
      if (quad.shell_rule[i] == static_cast<int>(rule)) {
        radii.push_back(quad.radial.nodes[i]);
        which.push_back(i);
      }
    if (radii.empty()) continue;
    const SphereRule& sph = quad.rules[rule];
    const auto values = sampler.on_spheres(radii, sph, options.center);
    for (std::size_t a = 0; a < radii.size(); ++a) {
      double acc = 0.0;
      for (std::size_t j = 0; j < sph.size(); ++j) {
        const double v = std::abs(values[a * sph.size() + j]);
        if (std::isinf(s)) acc = std::max(acc, v);
        else acc += sph.weights[j] * std::pow(v, s);
      }
      angular[which[a]] = std::isinf(s) ? acc : std::pow(acc, 1.0 / s);
    }
  }
  if (std::isinf(q)) return *std::max_element(angular.begin(), angular.end());
  double total = 0.0;
  for (std::size_t i = 0; i < shells; ++i) total += quad.radial.weights[i] * std::pow(angular[i], q);
  return std::pow(total, 1.0 / q);
}

double besov_aniso_norm(const SpectralField& f, double mu, double q, double s, Resampling resampling,
                        SampleMethod method, int min_degree) {
  const GridSpec& g = f.grid();
  const double r_max = 0.5 * g.box_length();
  const SpectralField fc = f.to_frequency();
  AngularQuadrature global;
  if (resampling == Resampling::global) {
    const double xi = std::max(effective_frequency(fc), g.frequency_step());
    global = make_adaptive_quadrature(r_max, xi, min_degree);
  }
  AnisoOptions options;
  options.method = method;
  double total = 0.0;
  for (int k = g.k_min(); k <= g.k_max(); ++k) {
    const SpectralField block = lp_project(fc, Band::exact, k);
    if (block.l2_norm_squared() == 0.0) continue;
    const double v = resampling == Resampling::global
                         ? aniso_norm(block, q, s, global, options)
                         : aniso_norm(block, q, s, make_adaptive_quadrature(r_max, std::ldexp(1.6, k), min_degree),
                                      options);
    const double w = std::exp2(mu * k);
    total += w * w * v * v;
  }
  return std::sqrt(total);
}

}  // namespace zakharov
