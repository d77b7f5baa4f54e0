#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "zakharov/fit.hpp"
#include "zakharov/fourier_bessel.hpp"
#include "zakharov/good_frame.hpp"
#include "zakharov/random.hpp"

namespace zakharov {

struct WaveAnisoConfig {
  double p = 4.0;  // time
  double q = 4.0;  // radial
  double s = 2.0;  // angular
  double alpha = 1.0;
  std::size_t draws = 200;
  std::vector<double> betas{2.0, 4.0, 8.0, 16.0};
  // Unit-scale sampling window: t' in [-t_extent, t_extent], r' in [0, r_max].
  double t_extent = 30.0;
  double t_step = 0.5;
  double r_max = 40.0;
  double r_step = 0.5;
  double exponent_bound = 0.6;
  int per_panel = 16;
};

// 1/p + 2/q < 1.
bool wave_aniso_admissible(double p, double q);
// Besov regularity 1/p + 3/q - 3/2.
double wave_aniso_regularity(double p, double q);

/*
 * ||e^{i alpha t |nabla|} v^omega||_{B^{1/p+3/q-3/2}_{p,(q,s),2}} with the
 * block pieces of v^omega written in Fourier-Bessel form. Each block is
 * evolved at unit scale, where the Besov weight and the rescaling of
 * L^p_t L^q_r combine to 2^{-3m/2}. The radial profiles
 *   D_{k,l}(t', r') = a_k sqrt(2/pi) sum_i w_i c_{k,l}(rho_i) e^{i alpha t' rho_i} j_k(r' rho_i)
 * are tabulated once; a sign pattern only recombines them.
 */
class WaveAnisoNorm {
 public:
  WaveAnisoNorm(const SpectralField& v, const GoodFrame& frame, const WaveAnisoConfig& config);

  // Per-block unit-scale norms ||P_m piece||_{L^p_t L^q_r L^s_theta} (unweighted).
  std::vector<double> block_norms(const std::function<double(int m, int k, int l)>& signs) const;
  double evaluate(const std::function<double(int m, int k, int l)>& signs) const;
  double evaluate(const RandomModel& model, std::uint64_t draw) const;

  const std::vector<int>& blocks() const { return blocks_; }
  // Largest share of the time integral carried by the outermost 10% of the window (unit signs).
  double truncation_diagnostic() const { return truncation_; }
  const WaveAnisoConfig& config() const { return config_; }

 private:
  double block_norm(std::size_t b, const std::function<double(int, int, int)>& signs, double* edge_share) const;

  WaveAnisoConfig config_;
  const GoodFrame* frame_;
  std::vector<int> blocks_;
  std::vector<Eigen::MatrixXcd> profiles_;  // per block: (t, r) rows x modes
  std::vector<double> times_, radii_;
  std::vector<double> t_weights_, r_weights_;
  SphereRule sphere_;
  Eigen::MatrixXd harmonics_;  // modes x sphere nodes
  double truncation_ = 0.0;
};

// L^beta_omega moments of the norm over draws; log-log beta fit checked <= exponent_bound.
FitReport wave_aniso_mc(const SpectralField& v, const GoodFrame& frame, const RandomModel& model,
                        const WaveAnisoConfig& config);

// Norms for every +-1 pattern over the blocks (degree-0 frames only).
std::vector<double> wave_aniso_sign_patterns(const WaveAnisoNorm& norm);

}  // namespace zakharov
