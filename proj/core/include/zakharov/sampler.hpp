#pragma once

#include <vector>

#include "zakharov/grid.hpp"
#include "zakharov/quadrature.hpp"

namespace zakharov {

enum class SampleMethod {
  exact,  // direct trigonometric sum, ring-contracted on spherical layouts
  fast,   // oversampled FFT + tensor Lagrange stencil
};

/*
 * Point evaluation of the trigonometric interpolant of a field at arbitrary
 * (periodically wrapped) positions.
 */
class FieldSampler {
 public:
  FieldSampler(const SpectralField& f, SampleMethod method, int oversample = 2, int stencil = 8);

  cplx operator()(const Vec3& x) const;

  // Values at r * theta_j for every radius and every sphere node; layout
  // [radius][node]. Points are taken relative to `center`.
  std::vector<cplx> on_spheres(const std::vector<double>& radii, const SphereRule& sphere,
                               const Vec3& center = {0.0, 0.0, 0.0}) const;

  SampleMethod method() const { return method_; }

 private:
  cplx exact_at(const Vec3& x) const;
  cplx fast_at(const Vec3& x) const;

  GridSpec grid_;
  SampleMethod method_;
  std::vector<cplx> coeffs_;   // frequency side, FFT order
  int m_ = 0;                  // oversampled points per axis
  int stencil_ = 0;
  std::vector<cplx> fine_;     // oversampled physical values
};

}  // namespace zakharov
