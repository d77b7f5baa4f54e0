#pragma once

#include <vector>

#include "zakharov/grid.hpp"

namespace zakharov {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule on [a, b].
Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0);
// Gauss-Legendre panels between consecutive break points.
Rule1D composite_gauss_legendre(const std::vector<double>& breaks, int per_panel);

/*
 * Product rule on S^2: Gauss-Legendre in cos(theta) times the uniform rule
 * in phi. Integrates every spherical harmonic of degree <= exact_degree.
 * Nodes are ordered ring by ring (theta outer, phi inner).
 */
struct SphereRule {
  int exact_degree = 0;
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> cos_theta;   // per ring
  std::vector<double> ring_weight; // Gauss weight per ring
  std::vector<double> phi;         // per azimuthal node
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

SphereRule make_sphere_rule(int exact_degree);

}  // namespace zakharov
