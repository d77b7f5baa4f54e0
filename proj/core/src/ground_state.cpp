#include "zakharov/ground_state.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "zakharov/dyadic.hpp"
#include "zakharov/error.hpp"

namespace zakharov {

namespace {

struct Shot {
  std::vector<double> q, dq;
  int outcome = 0;  // +1 crossed zero (too high), -1 turned up (too low), 0 neither
};

void rhs(double r, double q, double p, double& dq, double& dp) {
  dq = p;
  dp = q - q * q * q - 2.0 * p / r;
}

// Even Taylor series Q = sum a_n r^{2n}; Delta r^{2n} = 2n(2n+1) r^{2n-2}.
std::vector<double> series_coefficients(double a, int terms) {
  std::vector<double> c(terms, 0.0), sq(terms, 0.0), cube(terms, 0.0);
  c[0] = a;
  for (int n = 1; n < terms; ++n) {
    const int m = n - 1;
    sq[m] = 0.0;
    for (int i = 0; i <= m; ++i) sq[m] += c[i] * c[m - i];
    cube[m] = 0.0;
    for (int i = 0; i <= m; ++i) cube[m] += sq[i] * c[m - i];
    c[n] = (c[m] - cube[m]) / (2.0 * n * (2.0 * n + 1.0));
  }
  return c;
}

Shot shoot(double a, double h, int steps) {
  Shot s;
  s.q.resize(steps + 1);
  s.dq.resize(steps + 1);
  const auto coef = series_coefficients(a, 14);
  const int start = std::max(1, static_cast<int>(0.1 / h));
  for (int i = 0; i <= std::min(start, steps); ++i) {
    const double r = i * h, r2 = r * r;
    double q = 0.0, p = 0.0, pw = 1.0;
    for (std::size_t n = 0; n < coef.size(); ++n) {
      q += coef[n] * pw;
      if (n > 0) p += 2.0 * n * coef[n] * pw / r;
      pw *= r2;
    }
    s.q[i] = q;
    s.dq[i] = i == 0 ? 0.0 : p;
  }
  double q = s.q[start], p = s.dq[start];
  const int sub = 8;
  const double k = h / sub;
  for (int i = start; i < steps; ++i) {
    for (int j = 0; j < sub; ++j) {
      const double r = i * h + j * k;
      double k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
      rhs(r, q, p, k1q, k1p);
      rhs(r + k / 2, q + k / 2 * k1q, p + k / 2 * k1p, k2q, k2p);
      rhs(r + k / 2, q + k / 2 * k2q, p + k / 2 * k2p, k3q, k3p);
      rhs(r + k, q + k * k3q, p + k * k3p, k4q, k4p);
      q += k / 6 * (k1q + 2 * k2q + 2 * k3q + k4q);
      p += k / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
    }
    s.q[i + 1] = q;
    s.dq[i + 1] = p;
    if (q < 0.0) {
      s.outcome = 1;
      s.q.resize(i + 2);
      s.dq.resize(i + 2);
      return s;
    }
    if (p > 0.0) {
      s.outcome = -1;
      s.q.resize(i + 2);
      s.dq.resize(i + 2);
      return s;
    }
  }
  return s;
}

double simpson(const std::vector<double>& f, double h) {
  std::size_t n = f.size() - 1;
  if (n % 2) --n;
  double s = f[0] + f[n];
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
  return s * h / 3.0;
}

}  // namespace

double GroundState::profile(double r) const {
  r = std::abs(r);
  if (r >= r_match) return tail_amplitude * std::exp(-r) / r;
  const double t = r / step;
  const std::size_t i = std::min(static_cast<std::size_t>(t), radii.size() - 2);
  const double s = t - static_cast<double>(i);
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * q[i] + h10 * step * dq[i] + h01 * q[i + 1] + h11 * step * dq[i + 1];
}

double GroundState::derivative(double r) const {
  const double sign = r < 0 ? -1.0 : 1.0;
  r = std::abs(r);
  if (r >= r_match) return sign * -tail_amplitude * std::exp(-r) * (1.0 / r + 1.0 / (r * r));
  const double t = r / step;
  const std::size_t i = std::min(static_cast<std::size_t>(t), radii.size() - 2);
  const double s = t - static_cast<double>(i);
  const double d00 = 6 * s * s - 6 * s, d10 = 3 * s * s - 4 * s + 1, d01 = -d00, d11 = 3 * s * s - 2 * s;
  return sign * ((d00 * q[i] + d01 * q[i + 1]) / step + d10 * dq[i] + d11 * dq[i + 1]);
}

SpectralField GroundState::embed(const GridSpec& g) const {
  return SpectralField::from_function(g, [this](const Vec3& x) {
    return cplx(profile(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])));
  });
}

double GroundState::gradient_squared() const {
  std::vector<double> f(radii.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = dq[i] * dq[i] * radii[i] * radii[i];
  return 4.0 * std::numbers::pi * simpson(f, step);
}

double GroundState::l2_squared() const {
  std::vector<double> f(radii.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = q[i] * q[i] * radii[i] * radii[i];
  return 4.0 * std::numbers::pi * simpson(f, step);
}

double GroundState::l4_fourth() const {
  std::vector<double> f(radii.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(q[i], 4) * radii[i] * radii[i];
  return 4.0 * std::numbers::pi * simpson(f, step);
}

GroundState ground_state(double r_max, double tol, double step, double lo, double hi) {
  require(r_max >= 15.0, "ground_state: r_max must be at least 15");
  require(step > 0.0 && step <= 0.01, "ground_state: radial step must lie in (0, 0.01]");
  const double r_match = 8.0;
  const int match_steps = static_cast<int>(std::lround(r_match / step));
  // Shots past the match radius decide the bisection direction.
  const int shot_steps = static_cast<int>(std::lround(std::min(r_max, 16.0) / step));
  if (shoot(lo, step, shot_steps).outcome != -1 || shoot(hi, step, shot_steps).outcome != 1)
    throw NumericalError("ground_state: bisection bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                         "] does not enclose Q(0)");
  for (int it = 0; it < 200 && hi - lo > tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int o = shoot(mid, step, shot_steps).outcome;
    if (o > 0) hi = mid;
    else lo = mid;
  }
  const double a = 0.5 * (lo + hi);
  const Shot s = shoot(a, step, match_steps);
  if (static_cast<int>(s.q.size()) != match_steps + 1)
    throw NumericalError("ground_state: shot left the positive decreasing branch before the match radius");

  GroundState gs;
  gs.step = step;
  gs.r_max = r_max;
  gs.r_match = r_match;
  gs.q0 = a;
  // Split (Q, Q') at r_match into e^{-r}/r and e^{r}/r components.
  const double rm = r_match, em = std::exp(-rm), ep = std::exp(rm);
  const double y1 = em / rm, y1p = -em * (1 / rm + 1 / (rm * rm));
  const double y2 = ep / rm, y2p = ep * (1 / rm - 1 / (rm * rm));
  const double qm = s.q[match_steps], pm = s.dq[match_steps];
  const double det = y1 * y2p - y2 * y1p;
  const double B = (qm * y2p - pm * y2) / det, C = (y1 * pm - y1p * qm) / det;
  gs.tail_amplitude = B;
  // Remove the growing component smoothly over [r_match - 2, r_match].
  const int n = static_cast<int>(std::lround(r_max / step));
  gs.radii.resize(n + 1);
  gs.q.resize(n + 1);
  gs.dq.resize(n + 1);
  const double ra = rm - 2.0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * step;
    gs.radii[i] = r;
    if (i < match_steps) {
      double qv = s.q[i], pv = s.dq[i];
      if (r > ra) {
        const double x = (r - ra) / (rm - ra);
        const double S = smoothstep(x);
        const double dS = (smoothstep(x + 1e-6) - smoothstep(x - 1e-6)) / 2e-6 / (rm - ra);
        const double g = C * std::exp(r) / r, gp = C * std::exp(r) * (1 / r - 1 / (r * r));
        qv -= S * g;
        pv -= S * gp + dS * g;
      }
      gs.q[i] = qv;
      gs.dq[i] = pv;
    } else {
      gs.q[i] = B * std::exp(-r) / r;
      gs.dq[i] = -B * std::exp(-r) * (1 / r + 1 / (r * r));
    }
  }
  const auto res = radial_residual(gs);
  for (double v : res) gs.residual = std::max(gs.residual, v);
  return gs;
}

std::vector<double> radial_residual(const GroundState& gs) {
  static const double d1[4] = {0.0, 3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  static const double d2[4] = {-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0};
  const double h = gs.step;
  const auto value = [&](long i) {
    const long a = std::labs(i);
    return a < static_cast<long>(gs.q.size()) ? gs.q[a] : gs.profile(a * h);
  };
  std::vector<double> out(gs.q.size());
  for (std::size_t i = 0; i < gs.q.size(); ++i) {
    const long k = static_cast<long>(i);
    double qp = 0.0, qpp = d2[0] * value(k);
    for (int j = 1; j <= 3; ++j) {
      qp += d1[j] * (value(k + j) - value(k - j));
      qpp += d2[j] * (value(k + j) + value(k - j));
    }
    qp /= h;
    qpp /= h * h;
    const double q = gs.q[i];
    const double lap = i == 0 ? 3.0 * qpp : qpp + 2.0 * qp / gs.radii[i];
    out[i] = std::abs(lap - q + q * q * q);
  }
  return out;
}

namespace {

// Coefficients of the real part of the average over the eight coordinate reflections.
SpectralField real_even_part(const SpectralField& f) {
  const GridSpec& g = f.grid();
  SpectralField out(g, Side::frequency);
  const int n = g.points();
  auto mirror = [&](int i) { return g.fft_index(-g.wavenumber(i)) % n; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int ia : {a, mirror(a)})
          for (int ib : {b, mirror(b)})
            for (int ic : {c, mirror(c)}) s += f[g.index(ia, ib, ic)].real();
        out[g.index(a, b, c)] = s / 8.0;
      }
  return out;
}

}  // namespace

GridGroundState grid_ground_state(const GroundState& gs, const GridSpec& g, double tol, int max_iter) {
  const auto& k = g.frequency_norms();
  SpectralField u = gs.embed(g).to_frequency();
  GridGroundState best;
  best.residual = std::numeric_limits<double>::infinity();
  int worse = 0;
  for (int it = 0; it < max_iter; ++it) {
    // Imaginary and odd perturbations are not damped, so the iterate is kept real and even.
    u = real_even_part(u);
    SpectralField cube = u.to_physical();
    for (auto& x : cube.values()) x = x * x * x;
    cube = cube.to_frequency();
    double num = 0.0, den = 0.0, res = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      const double w = 1.0 + k[i] * k[i];
      num += w * std::norm(u[i]);
      den += std::real(std::conj(u[i]) * cube[i]);
      res += std::norm(w * u[i] - cube[i]);
      ref += std::norm(cube[i]);
    }
    res = std::sqrt(res / ref);
    if (res < best.residual) {
      best.field = u;
      best.residual = res;
      best.iterations = it;
      worse = 0;
    } else if (++worse >= 3) {
      break;
    }
    if (res < tol) break;
    require(den > 0.0, "grid_ground_state: iteration lost positivity");
    const double stab = std::pow(num / den, 1.5);
    for (std::size_t i = 0; i < k.size(); ++i) u[i] = stab * cube[i] / (1.0 + k[i] * k[i]);
  }
  if (!(best.residual < 1e-6))
    throw NumericalError("grid_ground_state: Petviashvili iteration stalled at residual " +
                         std::to_string(best.residual));
  best.field = best.field.to_physical();
  for (auto& x : best.field.values()) x = x.real();
  return best;
}

ThresholdResult threshold_check(const SpectralField& u, const SpectralField& v, const GroundState& gs) {
  require_same_grid(u, v);
  ThresholdResult r;
  r.lhs = (2.0 * gradient_norm_squared(u) + v.l2_norm_squared()) * u.l2_norm_squared();
  r.rhs = 8.0 * gs.nls_energy() * gs.mass();
  r.classification = r.lhs < r.rhs ? Threshold::below : Threshold::above;
  return r;
}

double threshold_scale(const SpectralField& u, const SpectralField& v, const GroundState& gs, double tol) {
  const ThresholdResult base = threshold_check(u, v, gs);
  require(base.lhs > 0.0, "threshold_scale: data must be nonzero");
  // lhs(lambda) = lambda^4 lhs(1); bracket then bisect on the classification.
  double lo = 0.0, hi = 1.0;
  while (threshold_check(hi * u, hi * v, gs).classification == Threshold::below) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (threshold_check(mid * u, mid * v, gs).classification == Threshold::below) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace zakharov
