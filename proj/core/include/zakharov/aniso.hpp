#pragma once

#include <vector>

#include "zakharov/grid.hpp"
#include "zakharov/quadrature.hpp"
#include "zakharov/sampler.hpp"

namespace zakharov {

/*
 * Quadrature for ||f||_{L^q_r L^s_theta}: radial shells r_i with weights for
 * the measure r^2 dr, and per shell a sphere rule (shells may share rules).
 */
struct AngularQuadrature {
  Rule1D radial;                 // weights already include r^2
  std::vector<int> shell_rule;   // index into rules, one per shell
  std::vector<SphereRule> rules;

  const SphereRule& sphere(std::size_t shell) const { return rules[shell_rule[shell]]; }
  int min_degree() const;
};

// Fixed sphere degree on every shell; radial Gauss panels of width <= panel
// on [0, r_max].
AngularQuadrature make_angular_quadrature(double r_max, int sphere_degree, double panel = 0.5,
                                          int per_panel = 4);

// Sphere degree grows with the angular content xi_eff * r of the shell
// (never below min_degree); radial panels scale like 1 / xi_eff.
AngularQuadrature make_adaptive_quadrature(double r_max, double xi_eff, int min_degree = 33);

// Harmonic degree needed to integrate |f|^2 on a sphere of radius r for f
// band-limited to |xi| <= xi_eff.
int required_sphere_degree(double xi_eff, double r);

// Smallest R with all but 1e-12 of the L^2 mass of f inside |xi| <= R.
double effective_frequency(const SpectralField& f);

enum class Resampling { block_wise, global };

struct AnisoOptions {
  SampleMethod method = SampleMethod::exact;
  Vec3 center{0.0, 0.0, 0.0};
};

// Angular L^s on every shell, then radial L^q against r^2 dr. Errors when a
// shell's sphere rule cannot resolve the field's angular content.
double aniso_norm(const SpectralField& f, double q, double s, const AngularQuadrature& quad,
                  const AnisoOptions& options = {});

// (sum_k 2^{2 k mu} ||P_k f||^2_{L^q_r L^s_theta})^{1/2}. Block-wise
// resampling builds a quadrature adapted to each block's frequency; global
// uses one quadrature adapted to the whole field. Radii run to L/2.
double besov_aniso_norm(const SpectralField& f, double mu, double q, double s,
                        Resampling resampling = Resampling::block_wise,
                        SampleMethod method = SampleMethod::fast, int min_degree = 33);

}  // namespace zakharov
