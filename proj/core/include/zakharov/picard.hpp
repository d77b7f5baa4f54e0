#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zakharov/normal_form.hpp"
#include "zakharov/trajectory.hpp"
#include "zakharov/weighted_norms.hpp"

namespace zakharov {

// Which right-hand-side terms of the nonlinear fixed point equation are active.
struct TermMask {
  bool boundary = true;    // -Omega_b(v, u)(t) and its T_max counterpart
  bool resonant = true;    // i int e^{i(t-s)Delta} (v u)_{LH+HH+alphaL}
  bool cubic_grad = true;  // -i alpha int e^{i(t-s)Delta} Omega_b(|nabla| |u|^2, u)
  bool cubic_vvu = true;   // i int e^{i(t-s)Delta} Omega_b(v, v u)
  bool wave = true;        // -i alpha int e^{i alpha (t-s)|nabla|} |nabla| |u|^2

  static TermMask none() { return {false, false, false, false, false}; }
};

struct DuhamelSpec {
  double alpha = 1.0;
  TermMask terms;
  double pair_budget = kDefaultPairBudget;
};

// Free evolutions e^{it Delta} u_plus and e^{i alpha t |nabla|} v_plus on the time grid.
Trajectory linear_trajectory(const SpectralField& u_plus, const SpectralField& v_plus, double alpha,
                             const std::vector<double>& times);

// Backward interaction-picture integral int_t^{T_max} e^{i(t-s)A} F(s) ds for the
// Schrodinger (A = Delta) or half-wave (A = alpha |nabla|) group, trapezoid in s.
std::vector<SpectralField> backward_duhamel_schrodinger(const std::vector<double>& times,
                                                        const std::vector<SpectralField>& forcing);
std::vector<SpectralField> backward_duhamel_wave(const std::vector<double>& times,
                                                 const std::vector<SpectralField>& forcing, double alpha);

// Right-hand side of the fixed point equation for (u_nl, v_nl).
Trajectory duhamel_apply(const Trajectory& state, const Trajectory& lin, const DuhamelSpec& spec);

struct PicardSpec {
  double alpha = 1.0;
  double T = 2.0;
  double T_max = 4.0;
  double dt = 0.05;
  int max_iter = 12;
  double tol = 1e-8;
  double nu = 0.05;
  double eps = 0.05;
  XNormOptions x_options;
  TermMask terms;
  double pair_budget = kDefaultPairBudget;

  WeightedNormSpec norm_spec() const { return WeightedNormSpec(nu, eps, T); }
  nlohmann::json to_json() const;
};

struct ConvergenceReport {
  bool converged = false;
  std::string status;                 // converged | max_iter | non_contraction
  int iterations = 0;
  std::vector<double> distances;      // X + Y distance of successive iterates
  std::vector<double> ratios;         // distances[n] / distances[n - 1]
  double contraction_ratio = 0.0;     // max ratio over steps starting above tol
  double residual = 0.0;              // ||w - Phi(w)||_{X + Y} at the returned iterate
  double x_norm = 0.0;                // ||u_nl||_X
  double y_norm = 0.0;                // ||v_nl||_Y
  double tail_estimate = 0.0;         // heuristic size of the neglected int_{T_max}^infty
  bool xl_active = false;
  nlohmann::json to_json() const;
};

struct PicardResult {
  Trajectory nonlinear;  // (u_nl, v_nl)
  Trajectory linear;     // (u_li, v_li)
  Trajectory full() const { return trajectory_sum(linear, nonlinear); }
  ConvergenceReport report;
};

// X_T + Y_T size of a (u, v) trajectory.
double xy_norm(const Trajectory& traj, const WeightedNormSpec& spec, const XNormOptions& options);

PicardResult picard_solve(const SpectralField& u_plus, const SpectralField& v_plus, const PicardSpec& spec,
                          const std::optional<Trajectory>& initial = std::nullopt);

}  // namespace zakharov
