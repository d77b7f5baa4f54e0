#include "zakharov/dyadic.hpp"

#include <cmath>
#include <functional>

#include "padding.hpp"
#include "zakharov/error.hpp"
#include "zakharov/fft.hpp"

namespace zakharov {

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double y = 1.0 - x;
  const double x5 = x * x * x * x * x;
  return x5 * (1.0 + y * (5.0 + y * (15.0 + y * (35.0 + y * 70.0))));
}

double eta0(double r) {
  r = std::abs(r);
  if (r <= 1.25) return 1.0;
  if (r >= 1.6) return 0.0;
  return smoothstep((1.6 - r) / 0.35);
}

double rho_le(int k, double r) { return eta0(std::ldexp(r, -k)); }

double rho(int k, double r) { return rho_le(k, r) - rho_le(k - 1, r); }

namespace {

void check_band(const GridSpec& g, int k) {
  if (k < g.k_min() || k > g.k_max())
    throw PreconditionError("dyadic index " + std::to_string(k) + " outside resolved range [" +
                            std::to_string(g.k_min()) + ", " + std::to_string(g.k_max()) + "]");
}

SpectralField scale_by(const SpectralField& f, const std::function<double(double)>& w) {
  SpectralField out = f.to_frequency();
  const auto& norms = out.grid().frequency_norms();
  for (std::size_t i = 0; i < norms.size(); ++i) out[i] *= w(norms[i]);
  return out;
}

}  // namespace

SpectralField lp_project(const SpectralField& f, Band band, int k) {
  check_band(f.grid(), k);
  switch (band) {
    case Band::exact:
      return scale_by(f, [k](double r) { return rho(k, r); });
    case Band::at_most:
      return scale_by(f, [k](double r) { return rho_le(k, r); });
    case Band::at_least:
      return scale_by(f, [k](double r) { return 1.0 - rho_le(k - 1, r); });
  }
  return f;
}

int bottom_block(const GridSpec& g) { return g.k_min() - 1; }

double block_weight(const GridSpec& g, int b, double r) {
  const int bot = bottom_block(g);
  if (b < bot || b > g.k_max()) return 0.0;
  return b == bot ? rho_le(bot, r) : rho(b, r);
}

double block_cumulative(const GridSpec& g, int j, double r) {
  if (j < bottom_block(g)) return 0.0;
  return rho_le(std::min(j, g.k_max()), r);
}

Para parse_para(const std::string& name) {
  if (name == "LH") return Para::LH;
  if (name == "HL") return Para::HL;
  if (name == "HH") return Para::HH;
  if (name == "alphaL" || name == "aL") return Para::alphaL;
  if (name == "XL") return Para::XL;
  if (name == "R") return Para::R;
  throw PreconditionError("unknown paraproduct kind " + name);
}

std::string to_string(Para kind) {
  switch (kind) {
    case Para::LH: return "LH";
    case Para::HL: return "HL";
    case Para::HH: return "HH";
    case Para::alphaL: return "alphaL";
    case Para::XL: return "XL";
    case Para::R: return "R";
  }
  return "?";
}

bool in_alpha_band(int b, double alpha) { return std::abs(b - std::log2(alpha)) <= 4.0; }

namespace {

using Weight = std::function<double(double)>;

bool has_content(const std::vector<cplx>& c, const std::vector<double>& norms, const Weight& w) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != cplx(0.0) && w(norms[i]) != 0.0) return true;
  return false;
}

}  // namespace

std::vector<ParaTerm> paraproduct_terms(const GridSpec& g, Para kind, double alpha) {
  std::vector<ParaTerm> terms;
  const int bot = bottom_block(g);
  auto w = [g](int b) { return Weight([g, b](double r) { return block_weight(g, b, r); }); };
  auto cum = [g](int j) { return Weight([g, j](double r) { return block_cumulative(g, j, r); }); };
  auto window = [g](int b) {
    return Weight([g, b](double r) { return block_cumulative(g, b + 4, r) - block_cumulative(g, b - 5, r); });
  };
  auto add_lh = [&] {
    for (int b = bot; b <= g.k_max(); ++b)
      if (b - 5 >= bot) terms.push_back({cum(b - 5), w(b)});
  };
  auto add_hl = [&](int which) {  // 0 all, 1 alpha band, 2 outside band
    for (int b = bot; b <= g.k_max(); ++b) {
      if (b - 5 < bot) continue;
      const bool band = in_alpha_band(b, alpha);
      if (which == 1 && !band) continue;
      if (which == 2 && band) continue;
      terms.push_back({w(b), cum(b - 5)});
    }
  };
  auto add_hh = [&] {
    for (int b = bot; b <= g.k_max(); ++b) terms.push_back({w(b), window(b)});
  };
  switch (kind) {
    case Para::LH: add_lh(); break;
    case Para::HL: add_hl(0); break;
    case Para::HH: add_hh(); break;
    case Para::alphaL: add_hl(1); break;
    case Para::XL: add_hl(2); break;
    case Para::R:
      add_lh();
      add_hh();
      add_hl(1);
      break;
  }
  return terms;
}

double paraproduct_mask(const GridSpec& g, Para kind, double alpha, double p, double q) {
  require(alpha > 0.0, "paraproduct: alpha must be positive");
  double s = 0.0;
  for (const auto& t : paraproduct_terms(g, kind, alpha)) s += t.on_f(p) * t.on_g(q);
  return s;
}

bool xl_support_nonempty(const GridSpec& g, double alpha) {
  const int bot = bottom_block(g);
  const auto& norms = g.frequency_norms();
  for (int b = g.k_min(); b <= g.k_max(); ++b) {
    if (b - 5 < bot || in_alpha_band(b, alpha)) continue;
    for (double r : norms)
      if (rho(b, r) > 0.0) return true;
  }
  return false;
}

SpectralField paraproduct(const SpectralField& f, const SpectralField& g, Para kind, double alpha) {
  require_same_grid(f, g);
  require(alpha > 0.0, "paraproduct: alpha must be positive");
  const GridSpec& grid = f.grid();
  const auto& norms = grid.frequency_norms();
  const SpectralField fc = f.to_frequency();
  const SpectralField gc = g.to_frequency();
  const int m = detail::padded_size(grid);
  const std::size_t big = static_cast<std::size_t>(m) * m * m;
  std::vector<cplx> acc(big, cplx(0.0)), a, b;
  std::vector<cplx> tmp(grid.size());
  bool any = false;
  for (const auto& term : paraproduct_terms(grid, kind, alpha)) {
    if (!has_content(fc.values(), norms, term.on_f) || !has_content(gc.values(), norms, term.on_g)) continue;
    any = true;
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = fc[i] * term.on_f(norms[i]);
    detail::embed_coefficients(grid, tmp, m, a);
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = gc[i] * term.on_g(norms[i]);
    detail::embed_coefficients(grid, tmp, m, b);
    fft::backward(m, a.data(), a.data());
    fft::backward(m, b.data(), b.data());
    for (std::size_t i = 0; i < big; ++i) acc[i] += a[i] * b[i];
  }
  SpectralField out(grid, Side::frequency);
  if (!any) return out;
  fft::forward(m, acc.data(), acc.data());
  detail::extract_coefficients(grid, acc, m, out.values());
  return out;
}

std::vector<double> block_lq_norms(const SpectralField& f, double q) {
  const GridSpec& g = f.grid();
  const SpectralField fc = f.to_frequency();
  std::vector<double> out;
  for (int k = g.k_min(); k <= g.k_max(); ++k) out.push_back(lq_norm(lp_project(fc, Band::exact, k), q));
  return out;
}

double besov_norm(const SpectralField& f, double mu, double q) {
  const GridSpec& g = f.grid();
  const auto norms = block_lq_norms(f, q);
  double s = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const double w = std::exp2(mu * (g.k_min() + static_cast<int>(i)));
    s += w * w * norms[i] * norms[i];
  }
  return std::sqrt(s);
}

double out_of_range_mass(const SpectralField& f) {
  const int k = f.grid().k_max();
  return scale_by(f, [k](double r) { return 1.0 - rho_le(k, r); }).l2_norm();
}

}  // namespace zakharov
