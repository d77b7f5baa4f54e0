#include "zakharov/picard.hpp"

#include <cmath>

#include "zakharov/dyadic.hpp"
#include "zakharov/error.hpp"

namespace zakharov {

Trajectory linear_trajectory(const SpectralField& u_plus, const SpectralField& v_plus, double alpha,
                             const std::vector<double>& times) {
  require_same_grid(u_plus, v_plus);
  Trajectory t;
  t.provenance = "linear";
  t.times = times;
  for (double s : times) {
    t.u.push_back(schrodinger_propagate(u_plus, s));
    t.v.push_back(half_wave_propagate(v_plus, s, alpha));
  }
  return t;
}

namespace {

template <class Pull, class Push>
std::vector<SpectralField> backward_integral(const std::vector<double>& times, const std::vector<SpectralField>& f,
                                             Pull pull, Push push) {
  require(times.size() == f.size() && !times.empty(), "backward Duhamel: size mismatch");
  const std::size_t m = times.size() - 1;
  std::vector<SpectralField> out(times.size());
  SpectralField acc(f.back().grid(), Side::frequency);
  SpectralField next = pull(f[m], times[m]);
  out[m] = acc;
  for (std::size_t j = m; j-- > 0;) {
    SpectralField cur = pull(f[j], times[j]);
    const double h = 0.5 * (times[j + 1] - times[j]);
    auto& a = acc.values();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += h * (cur[i] + next[i]);
    out[j] = push(acc, times[j]);
    next = std::move(cur);
  }
  return out;
}

}  // namespace

std::vector<SpectralField> backward_duhamel_schrodinger(const std::vector<double>& times,
                                                        const std::vector<SpectralField>& forcing) {
  return backward_integral(
      times, forcing, [](const SpectralField& f, double s) { return schrodinger_propagate(f, -s); },
      [](const SpectralField& f, double t) { return schrodinger_propagate(f, t); });
}

std::vector<SpectralField> backward_duhamel_wave(const std::vector<double>& times,
                                                 const std::vector<SpectralField>& forcing, double alpha) {
  return backward_integral(
      times, forcing, [alpha](const SpectralField& f, double s) { return half_wave_propagate(f, -s, alpha); },
      [alpha](const SpectralField& f, double t) { return half_wave_propagate(f, t, alpha); });
}

Trajectory duhamel_apply(const Trajectory& state, const Trajectory& lin, const DuhamelSpec& spec) {
  state.validate();
  lin.validate();
  require(state.size() == lin.size() && state.grid() == lin.grid(), "duhamel_apply: trajectories must share grids");
  for (std::size_t j = 0; j < state.size(); ++j)
    require(std::abs(state.times[j] - lin.times[j]) <= 1e-12 * std::max(1.0, lin.times[j]),
            "duhamel_apply: trajectories must share the time grid");
  const GridSpec& g = lin.grid();
  const std::size_t n = lin.size();
  const double alpha = spec.alpha;
  const TermMask& tm = spec.terms;
  const bool xl = xl_support_nonempty(g, alpha);

  std::vector<SpectralField> fu(n), fv(n), boundary(n);
  for (std::size_t j = 0; j < n; ++j) {
    const SpectralField u = (lin.u[j] + state.u[j]).to_frequency();
    const SpectralField v = (lin.v[j] + state.v[j]).to_frequency();
    SpectralField su(g, Side::frequency), sv(g, Side::frequency);
    const bool need_density = tm.wave || (xl && tm.cubic_grad);
    SpectralField grad_density;
    if (need_density) grad_density = abs_grad(padded_product(u, u, true));
    if (tm.resonant) {
      SpectralField r = paraproduct(v, u, Para::R, alpha).to_frequency();
      r *= cplx(0.0, 1.0);
      su += r;
    }
    if (xl && tm.cubic_grad) {
      SpectralField c = omega_b(grad_density, u, alpha, spec.pair_budget);
      c *= cplx(0.0, -alpha);
      su += c;
    }
    if (xl && tm.cubic_vvu) {
      SpectralField c = omega_b(v, padded_product(v, u), alpha, spec.pair_budget);
      c *= cplx(0.0, 1.0);
      su += c;
    }
    if (tm.wave) {
      sv = grad_density.to_frequency();
      sv *= cplx(0.0, -alpha);
    }
    boundary[j] = (xl && tm.boundary) ? omega_b(v, u, alpha, spec.pair_budget) : SpectralField(g, Side::frequency);
    fu[j] = std::move(su);
    fv[j] = std::move(sv);
  }
  const auto iu = backward_duhamel_schrodinger(lin.times, fu);
  const auto iv = backward_duhamel_wave(lin.times, fv, alpha);
  Trajectory out;
  out.times = lin.times;
  const double t_max = lin.times.back();
  for (std::size_t j = 0; j < n; ++j) {
    SpectralField u = iu[j];
    if (xl && tm.boundary) {
      u -= boundary[j];
      u += schrodinger_propagate(boundary.back(), lin.times[j] - t_max);
    }
    out.u.push_back(std::move(u));
    out.v.push_back(iv[j]);
  }
  // Exact zero final state.
  out.u.back() = SpectralField(g, Side::frequency);
  out.v.back() = SpectralField(g, Side::frequency);
  return out;
}

double xy_norm(const Trajectory& traj, const WeightedNormSpec& spec, const XNormOptions& options) {
  return xt_norm(traj, spec, options) + yt_norm(traj, spec);
}

nlohmann::json PicardSpec::to_json() const {
  return {{"alpha", alpha}, {"T", T},         {"T_max", T_max}, {"dt", dt},
          {"max_iter", max_iter}, {"tol", tol}, {"nu", nu},     {"eps", eps},
          {"sigma", 0.5 - nu},    {"include_aniso", x_options.include_aniso}};
}

nlohmann::json ConvergenceReport::to_json() const {
  return {{"converged", converged},
          {"status", status},
          {"iterations", iterations},
          {"distances", distances},
          {"ratios", ratios},
          {"contraction_ratio", contraction_ratio},
          {"residual", residual},
          {"x_norm", x_norm},
          {"y_norm", y_norm},
          {"tail_estimate", tail_estimate},
          {"xl_active", xl_active}};
}

PicardResult picard_solve(const SpectralField& u_plus, const SpectralField& v_plus, const PicardSpec& spec,
                          const std::optional<Trajectory>& initial) {
  require_same_grid(u_plus, v_plus);
  require(spec.T >= 1.0, "picard_solve: T must be at least 1");
  require(spec.T_max > spec.T, "picard_solve: T_max must exceed T");
  require(spec.max_iter >= 1 && spec.tol > 0.0, "picard_solve: need max_iter >= 1 and tol > 0");
  const auto times = uniform_times(spec.T, spec.T_max, spec.dt);
  const WeightedNormSpec ns = spec.norm_spec();
  const DuhamelSpec ds{spec.alpha, spec.terms, spec.pair_budget};

  PicardResult res;
  res.linear = linear_trajectory(u_plus, v_plus, spec.alpha, times);
  Trajectory w = initial ? *initial : zero_trajectory(u_plus.grid(), times);
  if (initial) {
    require(w.size() == times.size() && w.grid() == u_plus.grid(), "picard_solve: initial iterate mismatch");
    w.u.back() = SpectralField(u_plus.grid(), Side::frequency);
    w.v.back() = SpectralField(u_plus.grid(), Side::frequency);
  }
  ConvergenceReport& rep = res.report;
  rep.xl_active = xl_support_nonempty(u_plus.grid(), spec.alpha);
  rep.status = "max_iter";
  int above_one = 0;
  Trajectory next;
  for (int it = 1; it <= spec.max_iter; ++it) {
    next = duhamel_apply(w, res.linear, ds);
    const double d = xy_norm(trajectory_difference(next, w), ns, spec.x_options);
    rep.distances.push_back(d);
    rep.iterations = it;
    w = std::move(next);
    w.provenance = "picard-iterate " + std::to_string(it);
    if (rep.distances.size() >= 2) {
      const double prev = rep.distances[rep.distances.size() - 2];
      const double ratio = prev > 0.0 ? d / prev : 0.0;
      rep.ratios.push_back(ratio);
      if (prev > spec.tol) rep.contraction_ratio = std::max(rep.contraction_ratio, ratio);
      above_one = ratio >= 1.0 ? above_one + 1 : 0;
      if (above_one >= 3) {
        rep.status = "non_contraction";
        break;
      }
    }
    if (d < spec.tol) {
      rep.status = "converged";
      rep.converged = true;
      break;
    }
  }
  const Trajectory check = duhamel_apply(w, res.linear, ds);
  rep.residual = xy_norm(trajectory_difference(check, w), ns, spec.x_options);
  const auto parts = xt_norm_parts(w, ns, spec.x_options);
  rep.x_norm = parts.total();
  rep.y_norm = yt_norm(w, ns);
  // Integrand at T_max extrapolated with decay s^{-1-sigma}.
  {
    const SpectralField u = res.linear.u.back(), v = res.linear.v.back();
    const double f = padded_product(v, u).l2_norm() + spec.alpha * abs_grad(padded_product(u, u, true)).l2_norm();
    rep.tail_estimate = f * spec.T_max / ns.sigma();
  }
  res.nonlinear = std::move(w);
  return res;
}

}  // namespace zakharov
