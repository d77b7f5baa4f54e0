#include "zakharov/evolution.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "zakharov/error.hpp"

namespace zakharov {

double mass(const SpectralField& u) { return 0.5 * u.l2_norm_squared(); }

double energy(const SpectralField& u, const SpectralField& v) {
  require_same_grid(u, v);
  const SpectralField up = u.to_physical(), vp = v.to_physical();
  double coupling = 0.0;
  for (std::size_t i = 0; i < up.values().size(); ++i) coupling += vp[i].real() * std::norm(up[i]);
  coupling *= u.grid().cell_volume();
  return 0.5 * gradient_norm_squared(u) + 0.25 * v.l2_norm_squared() + 0.5 * coupling;
}

double k_functional(const SpectralField& u) {
  const double l4 = lq_norm(u, 4.0);
  return gradient_norm_squared(u) - 0.75 * l4 * l4 * l4 * l4;
}

Coupling parse_coupling(const std::string& name) {
  if (name == "real_part" || name == "real") return Coupling::real_part;
  if (name == "complex") return Coupling::complex;
  throw PreconditionError("unknown coupling " + name + " (expected real_part or complex)");
}

std::string to_string(Coupling c) { return c == Coupling::real_part ? "real_part" : "complex"; }

double dt_stability(const GridSpec& g) {
  const double top = std::sqrt(3.0) * g.max_frequency();
  return std::numbers::pi / (top * top);
}

namespace {

struct Stepper {
  GridSpec grid;
  double alpha, dt;
  Coupling coupling;
  ProductMode products;
  std::vector<cplx> half_u, half_v;  // e^{-i dt/2 |xi|^2}, e^{i alpha dt/2 |xi|}
  std::vector<double> abs_xi;

  Stepper(const GridSpec& g, double a, double step, Coupling c, ProductMode p)
      : grid(g), alpha(a), dt(step), coupling(c), products(p) {
    abs_xi = g.frequency_norms();
    half_u.resize(g.size());
    half_v.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      half_u[i] = std::polar(1.0, -0.5 * dt * abs_xi[i] * abs_xi[i]);
      half_v[i] = std::polar(1.0, 0.5 * alpha * dt * abs_xi[i]);
    }
  }

  void linear(SpectralField& u, SpectralField& v) const {
    for (std::size_t i = 0; i < half_u.size(); ++i) {
      u[i] *= half_u[i];
      v[i] *= half_v[i];
    }
  }

  // i alpha |nabla| |u|^2 in frequency.
  SpectralField forcing(const SpectralField& u) const {
    SpectralField density = products == ProductMode::dealiased ? padded_product(u, u, true)
                                                               : collocation_product(u, u, true);
    density = density.to_frequency();
    for (std::size_t i = 0; i < density.values().size(); ++i) density[i] *= cplx(0.0, alpha * abs_xi[i]);
    return density;
  }

  SpectralField coupling_field(const SpectralField& v) const {
    SpectralField p = v.to_physical();
    if (coupling == Coupling::real_part)
      for (auto& x : p.values()) x = x.real();
    return p;
  }

  void nonlinear(SpectralField& u, SpectralField& v) const {
    if (products == ProductMode::collocation && coupling == Coupling::real_part) {
      // |u| is frozen and Re(v) is unchanged by the real-valued forcing: both substeps are exact.
      const SpectralField w = forcing(u);
      SpectralField up = u.to_physical();
      const SpectralField vp = v.to_physical();
      for (std::size_t i = 0; i < up.values().size(); ++i) up[i] *= std::polar(1.0, -dt * vp[i].real());
      u = up.to_frequency();
      for (std::size_t i = 0; i < w.values().size(); ++i) v[i] += dt * w[i];
      return;
    }
    if (products == ProductMode::collocation) {
      // Midpoint rule for the exponent: v varies linearly across the substep.
      SpectralField up = u.to_physical();
      const SpectralField vp = v.to_physical();
      SpectralField half = up;
      for (std::size_t i = 0; i < half.values().size(); ++i) half[i] *= std::exp(cplx(0.0, -0.5 * dt) * vp[i]);
      const SpectralField w = forcing(half);
      SpectralField v1 = v;
      for (std::size_t i = 0; i < w.values().size(); ++i) v1[i] += dt * w[i];
      const SpectralField v1p = v1.to_physical();
      for (std::size_t i = 0; i < up.values().size(); ++i)
        up[i] *= std::exp(cplx(0.0, -0.5 * dt) * (vp[i] + v1p[i]));
      u = up.to_frequency();
      v = v1;
      return;
    }
    // Dealiased products: explicit midpoint on u_t = -i c(v) u, v_t = i alpha |nabla| |u|^2.
    auto rate_u = [&](const SpectralField& uu, const SpectralField& vv) {
      SpectralField r = padded_product(coupling_field(vv), uu).to_frequency();
      r *= cplx(0.0, -1.0);
      return r;
    };
    SpectralField um = u + (0.5 * dt) * rate_u(u, v);
    SpectralField vm = v + (0.5 * dt) * forcing(u);
    u += dt * rate_u(um, vm);
    v += dt * forcing(um);
  }
};

}  // namespace

Trajectory evolve_forward(const SpectralField& u0, const SpectralField& v0, double alpha, double t0, double t1,
                          double dt, const EvolveOptions& options) {
  require_same_grid(u0, v0);
  require(alpha > 0.0, "evolve_forward: alpha must be positive");
  require(dt > 0.0 && t1 > t0, "evolve_forward: need dt > 0 and t1 > t0");
  const GridSpec& g = u0.grid();
  const double limit = dt_stability(g);
  if (dt > limit) {
    std::ostringstream os;
    os << "evolve_forward: dt = " << dt << " exceeds the stability bound " << limit << " of this grid";
    throw PreconditionError(os.str());
  }
  const auto steps = static_cast<long>(std::llround((t1 - t0) / dt));
  require(std::abs(steps * dt - (t1 - t0)) <= 1e-9 * (t1 - t0), "evolve_forward: dt must divide the time span");
  const long every = options.snapshot_every > 0 ? options.snapshot_every : std::max(1L, steps / 100);
  require(steps % every == 0, "evolve_forward: snapshot stride must divide the step count");

  Stepper stepper(g, alpha, dt, options.coupling, options.products);
  SpectralField u = u0.to_frequency(), v = v0.to_frequency();
  Trajectory traj;
  traj.provenance = "forward-evolved";
  traj.times.push_back(t0);
  traj.u.push_back(u);
  traj.v.push_back(v);
  for (long n = 1; n <= steps; ++n) {
    stepper.linear(u, v);
    stepper.nonlinear(u, v);
    stepper.linear(u, v);
    const double t = t0 + n * dt;
    if (!u.is_finite() || !v.is_finite()) {
      std::ostringstream os;
      os << "evolve_forward: non-finite state at step " << n << " (t = " << t << "), last stored snapshot t = "
         << traj.times.back() << ", mass there " << mass(traj.u.back());
      throw NumericalError(os.str());
    }
    if (options.observer) options.observer(t, u, v);
    if (n % every == 0) {
      traj.times.push_back(t);
      traj.u.push_back(u);
      traj.v.push_back(v);
    }
  }
  return traj;
}

}  // namespace zakharov
