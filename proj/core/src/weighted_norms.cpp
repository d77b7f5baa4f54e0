#include "zakharov/weighted_norms.hpp"

#include <algorithm>
#include <cmath>

#include "zakharov/dyadic.hpp"
#include "zakharov/error.hpp"
#include "zakharov/parallel.hpp"

namespace zakharov {

WeightedNormSpec::WeightedNormSpec(double nu, double eps, double T) : nu_(nu), eps_(eps), T_(T) {
  require(nu > 0.0 && nu <= 0.5, "weighted norms: nu must lie in (0, 1/2]");
  require(eps > 0.0 && eps < 0.75, "weighted norms: eps must lie in (0, 3/4) so that q(eps) is in (2, 4)");
  require(T > 0.0, "weighted norms: T must be positive");
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

namespace {

void check_start(const Trajectory& traj, const WeightedNormSpec& spec) {
  require(!traj.empty(), "weighted norm of an empty trajectory");
  require(std::abs(traj.times.front() - spec.T()) <= 1e-9 * std::max(1.0, spec.T()),
          "weighted norm: trajectory must start at T");
}

}  // namespace

XNormParts xt_norm_parts(const Trajectory& traj, const WeightedNormSpec& spec, const XNormOptions& options) {
  check_start(traj, spec);
  const std::size_t n = traj.size();
  const double sigma = spec.sigma();
  std::vector<double> energy(n), strich(n), aniso(n);
  parallel_for(n, [&](std::size_t i) {
    const SpectralField u = traj.u[i].to_frequency();
    const double w = std::pow(traj.times[i], sigma);
    energy[i] = w * h1_norm(u);
    const SpectralField du = bracket_grad(u);
    const double b = besov_norm(du, 0.0, 6.0);
    strich[i] = w * w * b * b;
    if (options.include_aniso) {
      const double a = besov_aniso_norm(du, 0.25 + spec.eps(), spec.q_eps(), spec.angular_exponent(),
                                        options.resampling, options.method, options.min_degree);
      aniso[i] = w * w * a * a;
    }
  });
  XNormParts p;
  p.energy = *std::max_element(energy.begin(), energy.end());
  p.strichartz = std::sqrt(trapezoid(traj.times, strich));
  p.aniso = options.include_aniso ? std::sqrt(trapezoid(traj.times, aniso)) : 0.0;
  return p;
}

double xt_norm(const Trajectory& traj, const WeightedNormSpec& spec, const XNormOptions& options) {
  return xt_norm_parts(traj, spec, options).total();
}

double yt_norm(const Trajectory& traj, const WeightedNormSpec& spec) {
  check_start(traj, spec);
  double m = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    m = std::max(m, std::pow(traj.times[i], spec.sigma()) * traj.v[i].l2_norm());
  return m;
}

}  // namespace zakharov
