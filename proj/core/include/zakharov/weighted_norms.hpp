#pragma once

#include "zakharov/aniso.hpp"
#include "zakharov/trajectory.hpp"

namespace zakharov {

/*
 * Parameters of the time-weighted spaces: sigma = 1/2 - nu,
 * 1/q(eps) = 1/4 + eps/3, angular exponent 2/(1 - nu).
 */
class WeightedNormSpec {
 public:
  explicit WeightedNormSpec(double nu = 0.05, double eps = 0.05, double T = 1.0);

  double nu() const { return nu_; }
  double eps() const { return eps_; }
  double T() const { return T_; }
  double sigma() const { return 0.5 - nu_; }
  double q_eps() const { return 1.0 / (0.25 + eps_ / 3.0); }
  double q_minus_eps() const { return 1.0 / (0.25 - eps_ / 3.0); }
  double angular_exponent() const { return 2.0 / (1.0 - nu_); }
  WeightedNormSpec with_T(double T) const { return WeightedNormSpec(nu_, eps_, T); }

 private:
  double nu_, eps_, T_;
};

struct XNormOptions {
  bool include_aniso = true;
  Resampling resampling = Resampling::block_wise;
  SampleMethod method = SampleMethod::fast;
  int min_degree = 33;
};

struct XNormParts {
  double energy = 0.0;      // sup_t t^sigma ||u||_{H^1}
  double strichartz = 0.0;  // ||t^sigma <nabla> u||_{L^2_t B^0_{6,2}}
  double aniso = 0.0;       // ||t^sigma <nabla> u||_{L^2_t B^{1/4+eps}_{(q(eps), 2/(1-nu)),2}}
  double total() const { return energy + strichartz + aniso; }
};

XNormParts xt_norm_parts(const Trajectory& traj, const WeightedNormSpec& spec, const XNormOptions& options = {});
double xt_norm(const Trajectory& traj, const WeightedNormSpec& spec, const XNormOptions& options = {});
double yt_norm(const Trajectory& traj, const WeightedNormSpec& spec);

// Composite trapezoid of samples on the (possibly non-uniform) grid t.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace zakharov
