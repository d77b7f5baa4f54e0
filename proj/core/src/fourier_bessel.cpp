#include "zakharov/fourier_bessel.hpp"

#include <cmath>
#include <numbers>

#include "zakharov/dyadic.hpp"
#include "zakharov/error.hpp"
#include "zakharov/parallel.hpp"
#include "zakharov/special.hpp"

namespace zakharov {

Rule1D block_radial_rule(int per_panel) {
  Rule1D r = composite_gauss_legendre({0.625, 0.8, 1.25, 1.6}, per_panel);
  for (std::size_t i = 0; i < r.size(); ++i) r.weights[i] *= r.nodes[i] * r.nodes[i];
  return r;
}

std::vector<cplx> continuous_transform_on_spheres(const SpectralField& f, double scale,
                                                  const std::vector<double>& radii, const SphereRule& sphere) {
  const SpectralField p = f.to_physical();
  const GridSpec& g = p.grid();
  const int n = g.points();
  const std::size_t nodes = sphere.size();
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = g.position(j);
  const double cell = g.cell_volume();
  std::vector<cplx> out(radii.size() * nodes);
  parallel_for(radii.size(), [&](std::size_t r) {
    const double R = scale * radii[r];
    std::vector<cplx> ez(n), ex(n), ey(n), plane(static_cast<std::size_t>(n) * n);
    for (int ring = 0; ring < sphere.n_theta; ++ring) {
      const double ct = sphere.cos_theta[ring];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int l = 0; l < n; ++l) ez[l] = std::polar(1.0, -R * ct * x[l]);
      std::size_t idx = 0;
      for (std::size_t q = 0; q < plane.size(); ++q) {
        cplx s = 0.0;
        for (int l = 0; l < n; ++l, ++idx) s += p[idx] * ez[l];
        plane[q] = s;
      }
      for (int a = 0; a < sphere.n_phi; ++a) {
        const double kx = R * st * std::cos(sphere.phi[a]);
        const double ky = R * st * std::sin(sphere.phi[a]);
        for (int j = 0; j < n; ++j) {
          ex[j] = std::polar(1.0, -kx * x[j]);
          ey[j] = std::polar(1.0, -ky * x[j]);
        }
        cplx total = 0.0;
        for (int i = 0; i < n; ++i) {
          const cplx* row = &plane[static_cast<std::size_t>(i) * n];
          cplx s = 0.0;
          for (int j = 0; j < n; ++j) s += row[j] * ey[j];
          total += s * ex[i];
        }
        out[r * nodes + static_cast<std::size_t>(ring) * sphere.n_phi + a] = total * cell;
      }
    }
  });
  return out;
}

Eigen::MatrixXcd fb_coefficients_at(const SpectralField& block, int m, const GoodFrame& frame,
                                    const std::vector<double>& radii) {
  const SphereRule& s = frame.quad;
  const auto values = continuous_transform_on_spheres(block, std::ldexp(1.0, m), radii, s);
  const double dil = std::ldexp(1.0, 3 * m);
  Eigen::MatrixXcd v(static_cast<Eigen::Index>(radii.size()), static_cast<Eigen::Index>(s.size()));
  for (std::size_t r = 0; r < radii.size(); ++r)
    for (std::size_t j = 0; j < s.size(); ++j)
      v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = dil * values[r * s.size() + j];
  Eigen::MatrixXd wb = frame.values.transpose();  // nodes x modes
  for (std::size_t j = 0; j < s.size(); ++j) wb.row(static_cast<Eigen::Index>(j)) *= s.weights[j];
  return v * wb.cast<cplx>();
}

double FourierBesselCoeffs::coefficient_energy() const {
  double e = 0.0;
  for (Eigen::Index r = 0; r < quadrature.coeffs.rows(); ++r)
    e += quadrature.weights[static_cast<std::size_t>(r)] * quadrature.coeffs.row(r).squaredNorm();
  return e;
}

double FourierBesselCoeffs::plancherel_target() const {
  return std::pow(2.0 * std::numbers::pi, 3) * std::ldexp(1.0, 3 * block) * block_norm_squared;
}

double FourierBesselCoeffs::degree_zero_fraction() const {
  const double total = coefficient_energy();
  if (total == 0.0) return 1.0;
  double e0 = 0.0;
  for (Eigen::Index r = 0; r < quadrature.coeffs.rows(); ++r)
    e0 += quadrature.weights[static_cast<std::size_t>(r)] * std::norm(quadrature.coeffs(r, 0));
  return e0 / total;
}

namespace {

// Rows scaled by the unit-scale cutoff rho_0(rho) = rho_m(2^m rho).
void apply_cutoff(Eigen::MatrixXcd& coeffs, const std::vector<double>& radii) {
  for (std::size_t r = 0; r < radii.size(); ++r) coeffs.row(static_cast<Eigen::Index>(r)) *= rho(0, radii[r]);
}

FourierBesselCoeffs analyze(const SpectralField& source, const SpectralField& block, int m, const GoodFrame& frame,
                            const FbOptions& options, bool cutoff) {
  const GridSpec& g = block.grid();
  const auto& norms = g.frequency_norms();
  const double scale = std::ldexp(1.0, m);
  FourierBesselCoeffs out;
  out.block = m;
  out.max_degree = frame.max_degree;
  out.block_norm_squared = block.l2_norm_squared();
  const Rule1D rule = block_radial_rule(options.per_panel);
  out.quadrature.radii = rule.nodes;
  out.quadrature.weights = rule.weights;
  out.quadrature.coeffs = fb_coefficients_at(source, m, frame, rule.nodes);
  if (cutoff) apply_cutoff(out.quadrature.coeffs, out.quadrature.radii);
  if (options.lattice_radii) {
    const double dk = g.frequency_step();
    for (std::size_t i = 0; i < norms.size(); ++i) {
      if (rho(m, norms[i]) <= 0.0) continue;
      const auto t = g.triple(i);
      const long a = g.wavenumber(t[0]), b = g.wavenumber(t[1]), d = g.wavenumber(t[2]);
      out.lattice_slot.emplace(a * a + b * b + d * d, 0);
    }
    int slot = 0;
    for (auto& [n2, s] : out.lattice_slot) {
      s = slot++;
      out.lattice.radii.push_back(dk * std::sqrt(static_cast<double>(n2)) / scale);
    }
    out.lattice.coeffs = fb_coefficients_at(source, m, frame, out.lattice.radii);
    if (cutoff) apply_cutoff(out.lattice.coeffs, out.lattice.radii);
  }
  return out;
}

}  // namespace

FourierBesselCoeffs fb_analyze(const SpectralField& block, int m, const GoodFrame& frame, const FbOptions& options) {
  const SpectralField c = block.to_frequency();
  const auto& norms = c.grid().frequency_norms();
  const double scale = std::ldexp(1.0, m);
  double inside = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const double rho = norms[i] / scale, w = std::norm(c[i]);
    if (rho > 0.5 && rho < 2.0) inside += w;
    else outside += w;
  }
  if (outside > options.leakage_tolerance * (inside + outside))
    throw PreconditionError("fb_analyze: block " + std::to_string(m) + " leaks outside 1/2 < |xi| < 2 after rescale");
  return analyze(c, c, m, frame, options, false);
}

FourierBesselCoeffs fb_analyze_field(const SpectralField& f, int m, const GoodFrame& frame, const FbOptions& options) {
  const SpectralField c = f.to_frequency();
  const GridSpec& g = c.grid();
  require(m >= g.k_min() && m <= g.k_max(), "fb_analyze_field: block outside the resolved range");
  return analyze(c, lp_project(c, Band::exact, m), m, frame, options, true);
}

SpectralField fb_synthesize(const FourierBesselCoeffs& coeffs, const GoodFrame& frame, const GridSpec& grid,
                            const std::vector<double>& signs) {
  require(coeffs.max_degree == frame.max_degree, "fb_synthesize: coefficient degree does not match frame");
  require(signs.empty() || static_cast<int>(signs.size()) == frame.mode_count(), "fb_synthesize: sign count mismatch");
  require(!coeffs.lattice.radii.empty() || coeffs.lattice_slot.empty(), "fb_synthesize: lattice radii missing");
  const int K = frame.max_degree, modes = frame.mode_count();
  // Fold signs and the frame into coefficients over the reference harmonics.
  Eigen::MatrixXcd d = coeffs.lattice.coeffs;
  if (!signs.empty())
    for (int i = 0; i < modes; ++i) d.col(i) *= signs[i];
  Eigen::MatrixXcd ref(d.rows(), modes);
  for (int k = 0; k <= K; ++k) {
    const int n = 2 * k + 1, base = k * k;
    ref.middleCols(base, n) = d.middleCols(base, n) * frame.mixing[k].cast<cplx>();
  }
  SpectralField out(grid, Side::frequency);
  const auto& norms = grid.frequency_norms();
  const double dk = grid.frequency_step();
  const double factor = std::ldexp(1.0, -3 * coeffs.block) / grid.volume();
  std::vector<double> y(modes);
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (rho(coeffs.block, norms[i]) <= 0.0) continue;
    const auto t = grid.triple(i);
    const long a = grid.wavenumber(t[0]), b = grid.wavenumber(t[1]), c = grid.wavenumber(t[2]);
    auto it = coeffs.lattice_slot.find(a * a + b * b + c * c);
    if (it == coeffs.lattice_slot.end()) continue;
    const double r = norms[i];
    real_spherical_harmonics(K, {dk * a / r, dk * b / r, dk * c / r}, y.data());
    cplx s = 0.0;
    for (int j = 0; j < modes; ++j) s += ref(it->second, j) * y[j];
    out[i] = factor * s;
  }
  return out;
}

cplx fourier_bessel_prefactor(int k) {
  static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return powers[k % 4] * std::pow(2.0 * std::numbers::pi, -1.5);
}

cplx fb_evaluate_physical(const FourierBesselCoeffs& coeffs, const GoodFrame& frame, const Vec3& y) {
  const double r = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
  require(r > 0.0, "fb_evaluate_physical: point must differ from the origin");
  const int K = frame.max_degree;
  std::vector<double> b(frame.mode_count()), j(K + 1);
  frame.evaluate({y[0] / r, y[1] / r, y[2] / r}, b.data());
  const auto& q = coeffs.quadrature;
  cplx total = 0.0;
  for (std::size_t i = 0; i < q.radii.size(); ++i) {
    const double rho = q.radii[i];
    spherical_bessel_j(K, r * rho, j.data());
    // r^{-1/2} J_{k+1/2}(r rho) rho^{3/2} = sqrt(2/pi) rho^2 j_k(r rho); weights carry rho^2.
    for (int k = 0; k <= K; ++k) {
      cplx s = 0.0;
      for (int l = 0; l <= 2 * k; ++l) s += q.coeffs(static_cast<Eigen::Index>(i), k * k + l) * b[k * k + l];
      total += fourier_bessel_prefactor(k) * std::sqrt(2.0 / std::numbers::pi) * q.weights[i] * j[k] * s;
    }
  }
  return total;
}

AngularRandomizer::AngularRandomizer(const SpectralField& f, const GoodFrame& frame, const FbOptions& options)
    : grid_(f.grid()), frame_(&frame) {
  const SpectralField fc = f.to_frequency();
  const double total = fc.l2_norm_squared();
  SpectralField kept(grid_, Side::frequency);
  for (int m = grid_.k_min(); m <= grid_.k_max(); ++m) {
    const SpectralField block = lp_project(fc, Band::exact, m);
    kept += block;
    if (block.l2_norm_squared() <= 1e-28 * total) continue;
    blocks_.push_back(fb_analyze_field(fc, m, frame, options));
  }
  dropped_ = (fc - kept).l2_norm();
}

SpectralField AngularRandomizer::with_signs(const std::function<double(int, int, int)>& signs) const {
  SpectralField out(grid_, Side::frequency);
  std::vector<SpectralField> parts(blocks_.size());
  parallel_for(blocks_.size(), [&](std::size_t b) {
    const auto& c = blocks_[b];
    std::vector<double> s(frame_->mode_count());
    for (int k = 0; k <= frame_->max_degree; ++k)
      for (int l = 0; l <= 2 * k; ++l) s[GoodFrame::mode_index(k, l)] = signs(c.block, k, l);
    parts[b] = fb_synthesize(c, *frame_, grid_, s);
  });
  for (const auto& p : parts) out += p;
  return out;
}

SpectralField AngularRandomizer::draw(const RandomModel& model, std::uint64_t draw) const {
  return with_signs([&](int m, int k, int l) { return model.sample("ang", draw, {m, k, l}); });
}

double AngularRandomizer::degree_zero_fraction() const {
  double e = 0.0, e0 = 0.0;
  for (const auto& b : blocks_) {
    const double t = b.coefficient_energy();
    e += t;
    e0 += t * b.degree_zero_fraction();
  }
  return e == 0.0 ? 1.0 : e0 / e;
}

double AngularRandomizer::expected_norm_squared(double second_moment) const {
  const GridSpec& g = grid_;
  const auto& norms = g.frequency_norms();
  const double dk = g.frequency_step();
  const int modes = frame_->mode_count();
  std::vector<double> per(blocks_.size(), 0.0);
  parallel_for(blocks_.size(), [&](std::size_t b) {
    const auto& c = blocks_[b];
    const double factor = std::ldexp(1.0, -3 * c.block) / g.volume();
    std::vector<double> y(modes);
    double s = 0.0;
    for (std::size_t i = 0; i < norms.size(); ++i) {
      if (rho(c.block, norms[i]) <= 0.0) continue;
      const auto t = g.triple(i);
      const long a = g.wavenumber(t[0]), bb = g.wavenumber(t[1]), cc = g.wavenumber(t[2]);
      auto it = c.lattice_slot.find(a * a + bb * bb + cc * cc);
      if (it == c.lattice_slot.end()) continue;
      const double r = norms[i];
      frame_->evaluate({dk * a / r, dk * bb / r, dk * cc / r}, y.data());
      for (int j = 0; j < modes; ++j) s += std::norm(c.lattice.coeffs(it->second, j)) * y[j] * y[j];
    }
    per[b] = s * factor * factor;
  });
  double total = 0.0;
  for (double p : per) total += p;
  return total * g.volume() * second_moment;
}

nlohmann::json AngularRandomizer::summary() const {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : blocks_) {
    blocks.push_back({{"m", b.block},
                      {"coefficient_energy", b.coefficient_energy()},
                      {"plancherel_target", b.plancherel_target()},
                      {"lattice_radii", b.lattice.radii.size()},
                      {"degree_zero_fraction", b.degree_zero_fraction()}});
  }
  const double d0 = degree_zero_fraction();
  nlohmann::json j{{"blocks", blocks}, {"dropped_mass", dropped_}, {"degree_zero_fraction", d0}};
  if (d0 > 1.0 - 1e-10) j["note"] = "degenerate degree-0 content: input is radial, randomization reduces to per-block signs";
  return j;
}

SpectralField randomize_angular(const SpectralField& f, const GoodFrame& frame, const RandomModel& model,
                                std::uint64_t draw) {
  return AngularRandomizer(f, frame).draw(model, draw);
}

}  // namespace zakharov
