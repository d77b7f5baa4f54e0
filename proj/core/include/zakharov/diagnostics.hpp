#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zakharov/fit.hpp"
#include "zakharov/fourier_bessel.hpp"
#include "zakharov/grid.hpp"
#include "zakharov/picard.hpp"
#include "zakharov/random.hpp"
#include "zakharov/randomize_phys.hpp"

namespace zakharov {

// ---- moments of random linear combinations ----

// Samples of sum_k c_k X_k, draw d uses the "ld" substream at index (k, 0, 0).
std::vector<double> linear_combination_samples(const std::vector<double>& c, const RandomModel& model,
                                               std::size_t n, std::uint64_t first_draw = 0);

// Empirical L^beta moments against beta; fitted log-log exponent checked <= exponent_bound.
// For the Gaussian family the extra block carries empirical/exact ratios.
FitReport large_deviation_mc(const std::vector<double>& c, const RandomModel& model,
                             const std::vector<double>& betas, std::size_t n_samples,
                             double exponent_bound = 0.55);

// Empirical P(|F| > lambda) against lambda^2; fitted rate c = -slope A^2 checked in [lower, upper].
FitReport tail_probability_mc(const std::vector<double>& samples, double A, const std::vector<double>& lambdas,
                              double lower = 0.4, double upper = 0.6);

// Standard error of a Monte Carlo mean at n and 4n draws (disjoint draws) and their ratio.
struct SeRate {
  double se_n = 0.0;
  double se_4n = 0.0;
  double ratio = 0.0;
};
SeRate se_rate_check(const std::function<double(std::uint64_t)>& sample, std::size_t n);

// ---- localization mismatch ----

// ||psi_l P_k (psi_{l'} f)||_{L^p} for l' = 0 and l = d e_1; k = INT_MIN means P_{<=0}.
FitReport mismatch_spatial(const SpectralField& f, double p, int k, const std::vector<int>& distances, double D);
// ||P_k (psi_0 g)||_{L^p} against k with g = cos(xi_0 . x) a single-block (j) or constant-plus-wave
// low-frequency factor; slope of log2 against k checked <= -D.
FitReport mismatch_frequency(const GridSpec& grid, const Vec3& xi0, double p, const std::vector<int>& ks, double D,
                             bool low_frequency = false);

// ---- randomized linear flows ----

struct DispersiveConfig {
  double q = 2.0;
  double r = 6.0;
  double mu = 0.0;
  std::vector<double> T_list{1.0, 1.5, 2.0, 3.0, 4.0, 5.5, 8.0};
  double t_end = 64.0;
  int samples_per_octave = 8;
  std::size_t draws = 100;
  bool randomize = true;
  double tolerance = 0.15;
  bool extrapolate_tail = true;
  // Relative amplitude defining the data radius R0.
  double support_threshold = 1e-6;
};
double dispersive_exponent(double q, double r, double mu);

/*
 * ||e^{it Delta} g||_{L^r(R^3)} of the box-supported function g through
 *   e^{it Delta} g(x) = (4 pi i t)^{-3/2} e^{i|x|^2/4t} C_t(x / 2t),
 *   C_t(xi) = int e^{-i xi y} e^{i|y|^2/4t} g(y) dy,
 * so the spreading solution never wraps. Valid once R0 / 2t + |xi|_max stays
 * below the grid Nyquist frequency.
 */
double free_schrodinger_lr(const SpectralField& g, double t, double r);
// Radius outside which |f| < threshold * max |f|.
double support_radius(const SpectralField& f, double threshold);

// Periodic propagation while the spreading data stays inside the box, the
// lens identity afterwards; switch time and the mismatch of both at the
// switch are reported.
FitReport dispersive_decay_mc(const SpectralField& u_plus, const RandomModel& model, const DispersiveConfig& config);

// Per-k ratio sup_t t^sigma ||P_k u(t)||_{L^r} / ||t^sigma P_k u||_{L^q_t L^r} for focusing data.
enum class Flow { schrodinger, half_wave };
Flow parse_flow(const std::string& name);
struct EmbeddingConfig {
  Flow flow = Flow::schrodinger;
  double q = 2.0;
  double r = 6.0;
  double sigma = 0.45;
  double alpha = 1.0;
  double t_focus = 4.0;
  std::vector<int> ks;
  double tolerance = 0.25;  // relative, on the fitted k-slope
};
FitReport sobolev_embedding_check(const GridSpec& grid, const EmbeddingConfig& config);

// ---- physical and angular randomization moments ----

struct MomentCheck {
  double mean = 0.0;      // empirical E ||f^omega||^2
  double se = 0.0;        // standard error of the mean
  double expected = 0.0;  // oracle
  double z = 0.0;         // (mean - expected) / se
  std::size_t draws = 0;
  nlohmann::json to_json() const;
};
// Oracle E X^2 sum_k ||psi_k f||^2.
MomentCheck physical_moment_mc(const SpectralField& f, const PartitionOfUnity& pou, const RandomModel& model,
                               std::size_t draws);
MomentCheck angular_moment_mc(const AngularRandomizer& randomizer, const RandomModel& model, std::size_t draws);

// ---- normal form sizes ----

struct OmegaBSize {
  std::vector<std::array<int, 2>> pairs;  // (k, k1)
  std::vector<double> ratios;
  double spread = 0.0;  // max / min
  nlohmann::json to_json() const;
};
// ||<nabla>|nabla| Omega_b(P_k v, P_{k1} u)||_{L^2} / (||P_k v||_{L^2} ||P_{k1} u||_{L^inf}) for k1 <= k - 5.
OmegaBSize omega_b_size_sweep(const SpectralField& v, const SpectralField& u, double alpha);

// ---- scattering ----

struct ScatteringSeries {
  std::vector<double> times;
  std::vector<double> u_residual;  // ||u - u_li||_{H^1}
  std::vector<double> v_residual;  // ||v - v_li||_{L^2}
  std::vector<double> u_weighted;  // t^sigma times the above
  std::vector<double> v_weighted;
  double sup_u_weighted = 0.0;
  double sup_v_weighted = 0.0;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};
ScatteringSeries scattering_residual(const Trajectory& full, const SpectralField& u_plus, const SpectralField& v_plus,
                                     double alpha, double sigma);

}  // namespace zakharov
