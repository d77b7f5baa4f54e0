#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "zakharov/quadrature.hpp"

namespace zakharov {

inline constexpr std::array<double, 4> kCertificateExponents{2.0, 4.0, 8.0, 16.0};

struct DegreeCertificate {
  int degree = 0;
  std::array<double, 4> max_lq{};  // max_l ||b_{k,l}||_{L^q(S^2)} for q = 2, 4, 8, 16
  double max_linf = 0.0;           // sampled sup norm (recorded, not enforced)
  double ratio() const;            // max over q of max_lq / sqrt(q)
};

struct FrameOptions {
  double cap = 1.0;         // admissible C_frame
  int max_attempts = 5;
  int quad_degree = -1;     // storage sphere rule; default 2 k_deg_max + 3
};

/*
 * Per degree k an orthonormal basis b_{k,l} = sum_m O_k(l, m) Y_{k,m} of the
 * degree-k harmonics, O_k Haar distributed. Certificates are exact L^q norms
 * (q even, so |b|^q is a polynomial integrated by a rule of degree q k).
 */
struct GoodFrame {
  int max_degree = 0;
  std::uint64_t seed = 0;
  int attempts = 0;          // construction attempts consumed
  double cap = 1.0;
  double c_frame = 0.0;      // max over k, q of max_lq / sqrt(q)
  std::vector<Eigen::MatrixXd> mixing;
  std::vector<DegreeCertificate> certificates;
  SphereRule quad;
  Eigen::MatrixXd values;    // modes x quad nodes

  int mode_count() const { return (max_degree + 1) * (max_degree + 1); }
  static int mode_index(int k, int l) { return k * k + l; }  // l in [0, 2k]
  // All b_{k,l}(unit), indexed by mode_index.
  void evaluate(const Vec3& unit, double* out) const;
  // Applies the frame to reference harmonic values in place.
  void mix(const double* reference, double* out) const;

  nlohmann::json sidecar() const;
};

GoodFrame build_good_frame(int k_deg_max, std::uint64_t seed, const FrameOptions& options = {});
// Frame with identity mixing (reference real harmonics), certified the same way.
GoodFrame reference_frame(int k_deg_max, const FrameOptions& options = {});
std::vector<DegreeCertificate> certify_frame(const std::vector<Eigen::MatrixXd>& mixing);

// ZKGF container: magic, version, K, seed, attempts, cap, C_frame, quad degree,
// per degree the (2k+1)^2 mixing matrix then 5 certificate values.
void save_frame(const std::filesystem::path& path, const GoodFrame& frame);
GoodFrame load_frame(const std::filesystem::path& path);

}  // namespace zakharov
