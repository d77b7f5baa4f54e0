#include "zakharov/normal_form.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "zakharov/error.hpp"
#include "zakharov/parallel.hpp"

namespace zakharov {

namespace {

double norm3(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

struct Tabulated {
  std::vector<std::vector<double>> on_f, on_g;
};

Tabulated tabulate(const GridSpec& g, const std::vector<ParaTerm>& terms) {
  const auto& norms = g.frequency_norms();
  Tabulated t;
  for (const auto& term : terms) {
    std::vector<double> a(norms.size()), b(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) {
      a[i] = term.on_f(norms[i]);
      b[i] = term.on_g(norms[i]);
    }
    t.on_f.push_back(std::move(a));
    t.on_g.push_back(std::move(b));
  }
  return t;
}

std::vector<std::size_t> support(const std::vector<cplx>& c, const std::vector<std::vector<double>>* weights) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == cplx(0.0)) continue;
    if (weights) {
      bool any = false;
      for (const auto& w : *weights) any = any || w[i] != 0.0;
      if (!any) continue;
    }
    s.push_back(i);
  }
  return s;
}

}  // namespace

double resonance(const Vec3& p, const Vec3& q, double alpha) {
  const Vec3 xi{p[0] + q[0], p[1] + q[1], p[2] + q[2]};
  const double x = norm3(xi), b = norm3(q);
  return x * x + alpha * norm3(p) - b * b;
}

BilinearSymbol unit_symbol() {
  BilinearSymbol s;
  s.value = [](const Vec3&, const Vec3&) { return cplx(1.0); };
  return s;
}

BilinearSymbol masked_symbol(BilinearSymbol base, std::vector<ParaTerm> mask) {
  base.masked = true;
  base.mask = std::move(mask);
  return base;
}

BilinearSymbol omega_b_symbol(const GridSpec& g, double alpha) {
  require(alpha > 0.0, "omega_b: alpha must be positive");
  BilinearSymbol s;
  s.value = [alpha](const Vec3& p, const Vec3& q) { return cplx(1.0 / resonance(p, q, alpha)); };
  s.denominator = [alpha](const Vec3& p, const Vec3& q) { return resonance(p, q, alpha); };
  s.masked = true;
  s.mask = paraproduct_terms(g, Para::XL, alpha);
  return s;
}

SpectralField bilinear_apply(const SpectralField& f, const SpectralField& g, const BilinearSymbol& sym,
                             double budget) {
  require_same_grid(f, g);
  require(static_cast<bool>(sym.value), "bilinear_apply: symbol has no value");
  const GridSpec& grid = f.grid();
  const int n = grid.points(), half = n / 2;
  const SpectralField fc = f.to_frequency(), gc = g.to_frequency();
  SpectralField out(grid, Side::frequency);
  if (sym.masked && sym.mask.empty()) return out;
  const Tabulated tab = sym.masked ? tabulate(grid, sym.mask) : Tabulated{};
  const auto sf = support(fc.values(), sym.masked ? &tab.on_f : nullptr);
  const auto sg = support(gc.values(), sym.masked ? &tab.on_g : nullptr);
  if (sf.empty() || sg.empty()) return out;
  const bool inner_is_g = sg.size() <= sf.size();
  const auto& inner = inner_is_g ? sg : sf;
  const double pairs = static_cast<double>(grid.size()) * static_cast<double>(inner.size());
  if (pairs > budget) {
    std::ostringstream os;
    os << "bilinear_apply: " << pairs << " pair evaluations exceed budget " << budget
       << "; reduce N (currently " << n << ") or restrict the symbol to a paraproduct mask";
    throw PreconditionError(os.str());
  }
  const double dk = grid.frequency_step();
  std::vector<std::array<int, 3>> inner_n(inner.size());
  for (std::size_t j = 0; j < inner.size(); ++j) {
    const auto t = grid.triple(inner[j]);
    inner_n[j] = {grid.wavenumber(t[0]), grid.wavenumber(t[1]), grid.wavenumber(t[2])};
  }
  const auto& other = inner_is_g ? fc : gc;
  const auto& inner_field = inner_is_g ? gc : fc;
  const std::size_t terms = tab.on_f.size();
  parallel_for(grid.size(), [&](std::size_t o) {
    const auto t = grid.triple(o);
    const int xo = grid.wavenumber(t[0]), yo = grid.wavenumber(t[1]), zo = grid.wavenumber(t[2]);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < inner.size(); ++j) {
      const int a = xo - inner_n[j][0], b = yo - inner_n[j][1], c = zo - inner_n[j][2];
      if (a < -half || a >= half || b < -half || b >= half || c < -half || c >= half) continue;
      const std::size_t k = grid.index(grid.fft_index(a), grid.fft_index(b), grid.fft_index(c));
      if (other[k] == cplx(0.0)) continue;
      const std::size_t ip = inner_is_g ? k : inner[j], iq = inner_is_g ? inner[j] : k;
      double w = 1.0;
      if (sym.masked) {
        w = 0.0;
        for (std::size_t s = 0; s < terms; ++s) w += tab.on_f[s][ip] * tab.on_g[s][iq];
        if (w == 0.0) continue;
      }
      const Vec3 p = inner_is_g ? Vec3{a * dk, b * dk, c * dk}
                                : Vec3{inner_n[j][0] * dk, inner_n[j][1] * dk, inner_n[j][2] * dk};
      const Vec3 q = inner_is_g ? Vec3{inner_n[j][0] * dk, inner_n[j][1] * dk, inner_n[j][2] * dk}
                                : Vec3{a * dk, b * dk, c * dk};
      if (sym.denominator && std::abs(sym.denominator(p, q)) < sym.floor) {
        std::ostringstream os;
        os << "bilinear_apply: symbol denominator below floor " << sym.floor << " at p=(" << p[0] << "," << p[1]
           << "," << p[2] << "), q=(" << q[0] << "," << q[1] << "," << q[2] << ")";
        throw NumericalError(os.str());
      }
      acc += w * sym.value(p, q) * other[k] * inner_field[inner[j]];
    }
    out[o] = acc;
  });
  return out;
}

SpectralField omega_b(const SpectralField& v, const SpectralField& u, double alpha, double budget) {
  require(alpha > 0.0, "omega_b: alpha must be positive");
  if (!xl_support_nonempty(v.grid(), alpha))
    throw PreconditionError("omega_b: XL support is empty on this grid (needs k_max > log2 alpha + 4)");
  return bilinear_apply(v, u, omega_b_symbol(v.grid(), alpha), budget);
}

ResonanceFloor xl_resonance_floor(const GridSpec& g, double alpha) {
  require(alpha > 0.0, "xl_resonance_floor: alpha must be positive");
  ResonanceFloor r;
  r.c0 = std::numeric_limits<double>::infinity();
  r.min_omega = std::numeric_limits<double>::infinity();
  const auto terms = paraproduct_terms(g, Para::XL, alpha);
  if (terms.empty()) return r;
  const Tabulated tab = tabulate(g, terms);
  std::vector<cplx> ones(g.size(), cplx(1.0));
  const auto sp = support(ones, &tab.on_f), sq = support(ones, &tab.on_g);
  for (std::size_t ip : sp) {
    const Vec3 p = g.frequency(ip);
    for (std::size_t iq : sq) {
      double w = 0.0;
      for (std::size_t s = 0; s < terms.size(); ++s) w += tab.on_f[s][ip] * tab.on_g[s][iq];
      if (w == 0.0) continue;
      const Vec3 q = g.frequency(iq);
      const Vec3 xi{p[0] + q[0], p[1] + q[1], p[2] + q[2]};
      const double om = resonance(p, q, alpha);
      const double x = norm3(xi);
      const double ref = std::min(x * x, alpha * norm3(p) / 4.0);
      r.min_omega = std::min(r.min_omega, om);
      r.c0 = std::min(r.c0, om / ref);
      ++r.pairs;
    }
  }
  return r;
}

}  // namespace zakharov
