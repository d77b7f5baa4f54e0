#pragma once

#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "zakharov/good_frame.hpp"
#include "zakharov/grid.hpp"
#include "zakharov/quadrature.hpp"
#include "zakharov/random.hpp"

namespace zakharov {

/*
 * Unit-frequency block g_m = (P_m f)(2^{-m} .), so
 *   g^_m(xi) = 2^{3m} (P_m f)^(2^m xi),   supp g^_m in 5/8 < |xi| < 8/5.
 * c^_{k,l}(rho) = int_{S^2} g^_m(rho theta) b_{k,l}(theta) dtheta.
 * Continuous transforms at off-lattice points are the exact trigonometric
 * interpolants h^3 sum_j F(x_j) e^{-i xi x_j} of the grid data.
 */
struct RadialSamples {
  std::vector<double> radii;
  std::vector<double> weights;  // rho^2 d rho weights (empty for lattice radii)
  Eigen::MatrixXcd coeffs;      // radii x modes
};

struct FourierBesselCoeffs {
  int block = 0;
  int max_degree = 0;
  double block_norm_squared = 0.0;  // ||P_m f||_{L^2}^2 on the grid
  RadialSamples quadrature;         // Gauss panels on [5/8, 4/5, 5/4, 8/5]
  RadialSamples lattice;            // every |xi_n| / 2^m inside the band
  std::map<long, int> lattice_slot; // |n|^2 -> row in lattice

  // sum_{k,l} ||c^_{k,l}||^2_{L^2(rho^2 d rho)}.
  double coefficient_energy() const;
  // (2 pi)^3 ||g_m||_{L^2}^2 = (2 pi)^3 2^{3m} ||P_m f||^2.
  double plancherel_target() const;
  // Fraction of coefficient energy in degree-0 modes.
  double degree_zero_fraction() const;
};

struct FbOptions {
  int per_panel = 16;
  bool lattice_radii = true;
  double leakage_tolerance = 1e-8;
};

// Radial rule used for c^: composite Gauss on the plateau/transition panels.
Rule1D block_radial_rule(int per_panel);

// Continuous transform of a physical-side field at 2^m rho theta for every
// radius and sphere node (layout [radius][node]).
std::vector<cplx> continuous_transform_on_spheres(const SpectralField& f, double scale,
                                                  const std::vector<double>& radii, const SphereRule& sphere);

// Analysis coefficients at arbitrary unit-frequency radii.
Eigen::MatrixXcd fb_coefficients_at(const SpectralField& block, int m, const GoodFrame& frame,
                                    const std::vector<double>& radii);

FourierBesselCoeffs fb_analyze(const SpectralField& block, int m, const GoodFrame& frame,
                               const FbOptions& options = {});
// Same for P_m f, with sphere data taken from the transform of the whole field
// times the cutoff, so they stay smooth when the lattice under-resolves rho_m.
FourierBesselCoeffs fb_analyze_field(const SpectralField& f, int m, const GoodFrame& frame,
                                     const FbOptions& options = {});

// Frequency-space synthesis on the block's lattice; signs indexed by
// GoodFrame::mode_index (empty means all ones). Returns the original-scale
// field sum_n c_n e^{i xi_n x}.
SpectralField fb_synthesize(const FourierBesselCoeffs& coeffs, const GoodFrame& frame, const GridSpec& grid,
                            const std::vector<double>& signs = {});

// Physical-space Fourier-Bessel evaluation at unit scale:
//   g(r theta) = sum_{k,l} a_k r^{-1/2} b_{k,l}(theta) int c^_{k,l}(rho) J_{k+1/2}(r rho) rho^{3/2} d rho,
// a_k = (2 pi)^{-3/2} i^k for the transform convention above.
cplx fourier_bessel_prefactor(int k);
cplx fb_evaluate_physical(const FourierBesselCoeffs& coeffs, const GoodFrame& frame, const Vec3& y);

/*
 * Angular randomization of a whole field: per block m in [k_min, k_max]
 * analysis is done once, each draw re-synthesizes with signs
 * Y^m_{k,l}(omega) from the "ang" substream indexed (m, k, l).
 */
class AngularRandomizer {
 public:
  AngularRandomizer(const SpectralField& f, const GoodFrame& frame, const FbOptions& options = {});

  SpectralField draw(const RandomModel& model, std::uint64_t draw) const;
  SpectralField with_signs(const std::function<double(int m, int k, int l)>& signs) const;

  const std::vector<FourierBesselCoeffs>& blocks() const { return blocks_; }
  // ||f - sum_m P_m f||_{L^2}: zero mode and content above the top block.
  double dropped_mass() const { return dropped_; }
  double degree_zero_fraction() const;
  // E ||f^omega||_{L^2}^2 for independent mean-zero signs with the given second moment.
  double expected_norm_squared(double second_moment) const;
  nlohmann::json summary() const;

 private:
  GridSpec grid_;
  const GoodFrame* frame_;
  std::vector<FourierBesselCoeffs> blocks_;
  double dropped_ = 0.0;
};

SpectralField randomize_angular(const SpectralField& f, const GoodFrame& frame, const RandomModel& model,
                                std::uint64_t draw);

}  // namespace zakharov
