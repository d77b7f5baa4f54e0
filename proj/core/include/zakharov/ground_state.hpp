#pragma once

#include <vector>

#include "zakharov/grid.hpp"

namespace zakharov {

/*
 * Positive radial solution of -Delta Q + Q = Q^3:
 *   Q'' + (2/r) Q' - Q + Q^3 = 0,  Q'(0) = 0,  Q -> 0.
 * Shot profile up to r_match, then the decaying linear tail B e^{-r} / r.
 */
struct GroundState {
  double step = 0.0;
  double r_max = 0.0;
  double r_match = 0.0;
  double q0 = 0.0;
  double tail_amplitude = 0.0;
  std::vector<double> radii, q, dq;
  double residual = 0.0;  // sup of the ODE residual on the radial nodes

  double profile(double r) const;
  double derivative(double r) const;
  SpectralField embed(const GridSpec& g) const;

  // Radial quadrature over [0, r_max] (4 pi r^2 dr).
  double gradient_squared() const;  // int |grad Q|^2
  double l2_squared() const;        // int Q^2
  double l4_fourth() const;         // int Q^4
  double mass() const { return 0.5 * l2_squared(); }
  double nls_energy() const { return 0.5 * gradient_squared() - 0.25 * l4_fourth(); }
};

// Bisection on Q(0) in [lo, hi]; tol is the relative bracket width at which it stops.
GroundState ground_state(double r_max = 20.0, double tol = 1e-15, double step = 0.002, double lo = 4.0,
                         double hi = 4.6);

/*
 * Stationary solution of the grid problem (1 - Delta) Q = Q^3 with the
 * spectral Laplacian and pointwise cube, by Petviashvili iteration started
 * from the embedded profile. Returns the iterate of smallest relative
 * residual ||(1 - Delta) Q - Q^3|| / ||Q^3||.
 */
struct GridGroundState {
  SpectralField field;
  double residual = 0.0;
  int iterations = 0;
};
GridGroundState grid_ground_state(const GroundState& gs, const GridSpec& g, double tol = 1e-10, int max_iter = 300);

// Sixth-order finite-difference ODE residual of a profile on r_i = i h.
std::vector<double> radial_residual(const GroundState& gs);

enum class Threshold { below, above };

struct ThresholdResult {
  Threshold classification = Threshold::below;
  double lhs = 0.0;  // (2 ||grad u||^2 + ||v||^2) ||u||^2
  double rhs = 0.0;  // 8 E_S(Q) M(Q)
};

ThresholdResult threshold_check(const SpectralField& u, const SpectralField& v, const GroundState& gs);
// Scale lambda* at which lambda (u, v) crosses the threshold, by bisection.
double threshold_scale(const SpectralField& u, const SpectralField& v, const GroundState& gs, double tol = 1e-12);

}  // namespace zakharov
