#include "zakharov/grid.hpp"

#include <cmath>
#include <numbers>

#include "zakharov/error.hpp"
#include "zakharov/fft.hpp"
#include "padding.hpp"

namespace zakharov {

namespace {

void apply_checkerboard(std::vector<cplx>& a, int n) {
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l, ++idx)
        if ((i + j + l) & 1) a[idx] = -a[idx];
}

}  // namespace

GridSpec::GridSpec(double box_length, int points) : L_(box_length), N_(points) {
  require(std::isfinite(box_length) && box_length > 0.0, "grid: box length must be positive");
  require(points >= 8, "grid: N must be at least 8 to resolve dyadic shells");
  require(points % 2 == 0, "grid: N must be even");
  dk_ = 2.0 * std::numbers::pi / L_;
  const double kmax_real = std::log2(max_frequency() / 1.6);
  k_max_ = static_cast<int>(std::floor(kmax_real));
  while (std::ldexp(1.6, k_max_ + 1) <= max_frequency() * (1 + 1e-14)) ++k_max_;
  while (std::ldexp(1.6, k_max_) > max_frequency() * (1 + 1e-14)) --k_max_;
  k_min_ = static_cast<int>(std::ceil(std::log2(dk_) - 1e-12)) - 1;

  auto norms = std::make_shared<std::vector<double>>(size());
  std::size_t idx = 0;
  for (int i = 0; i < N_; ++i)
    for (int j = 0; j < N_; ++j)
      for (int l = 0; l < N_; ++l, ++idx) {
        double a = wavenumber(i), b = wavenumber(j), c = wavenumber(l);
        (*norms)[idx] = dk_ * std::sqrt(a * a + b * b + c * c);
      }
  norms_ = std::move(norms);
}

GridSpec make_grid(double box_length, int points) { return GridSpec(box_length, points); }

std::array<int, 3> GridSpec::triple(std::size_t idx) const {
  const std::size_t n = static_cast<std::size_t>(N_);
  return {static_cast<int>(idx / (n * n)), static_cast<int>((idx / n) % n), static_cast<int>(idx % n)};
}

Vec3 GridSpec::frequency(std::size_t idx) const {
  auto t = triple(idx);
  return {dk_ * wavenumber(t[0]), dk_ * wavenumber(t[1]), dk_ * wavenumber(t[2])};
}

Vec3 GridSpec::node(std::size_t idx) const {
  auto t = triple(idx);
  return {position(t[0]), position(t[1]), position(t[2])};
}

bool GridSpec::is_nyquist(std::size_t idx) const {
  auto t = triple(idx);
  return t[0] == N_ / 2 || t[1] == N_ / 2 || t[2] == N_ / 2;
}

SpectralField::SpectralField(const GridSpec& grid, Side side)
    : grid_(grid), side_(side), data_(grid.size(), cplx(0.0, 0.0)) {}

SpectralField::SpectralField(const GridSpec& grid, Side side, std::vector<cplx> values)
    : grid_(grid), side_(side), data_(std::move(values)) {
  require(data_.size() == grid_.size(), "field: value count does not match grid");
}

SpectralField SpectralField::from_function(const GridSpec& grid,
                                           const std::function<cplx(const Vec3&)>& f) {
  SpectralField out(grid, Side::physical);
  for (std::size_t i = 0; i < grid.size(); ++i) out.data_[i] = f(grid.node(i));
  return out;
}

SpectralField SpectralField::to_frequency() const {
  if (side_ == Side::frequency) return *this;
  const int n = grid_.points();
  SpectralField out(grid_, Side::frequency);
  fft::forward(n, data_.data(), out.data_.data());
  apply_checkerboard(out.data_, n);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (auto& c : out.data_) c *= scale;
  return out;
}

SpectralField SpectralField::to_physical() const {
  if (side_ == Side::physical) return *this;
  const int n = grid_.points();
  SpectralField out(grid_, Side::physical, data_);
  apply_checkerboard(out.data_, n);
  fft::backward(n, out.data_.data(), out.data_.data());
  return out;
}

double SpectralField::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& c : data_) s += std::norm(c);
  return side_ == Side::frequency ? s * grid_.volume() : s * grid_.cell_volume();
}

double SpectralField::l2_norm() const { return std::sqrt(l2_norm_squared()); }

bool SpectralField::is_finite() const {
  for (const auto& c : data_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  require(a.grid() == b.grid(), "fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(*this, o);
  const SpectralField& rhs = o.side() == side_ ? o : o.as(side_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(*this, o);
  if (o.side() == side_) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  } else {
    SpectralField rhs = o.as(side_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  }
  return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
  for (auto& c : data_) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(cplx s, SpectralField a) { return a *= s; }
SpectralField operator*(SpectralField a, cplx s) { return a *= s; }

SpectralField apply_radial_multiplier(const SpectralField& f, const RadialSymbol& m) {
  SpectralField out = f.to_frequency();
  const auto& norms = out.grid().frequency_norms();
  auto& c = out.values();
  if (m.at_zero) {
    c[0] *= *m.at_zero;
  } else {
    double total = 0.0;
    for (const auto& x : c) total += std::norm(x);
    if (std::abs(c[0]) > 1e-12 * std::sqrt(total))
      throw PreconditionError("singular multiplier: symbol undefined at xi = 0 but zero mode is nonzero");
    c[0] = 0.0;
  }
  for (std::size_t i = 1; i < c.size(); ++i) c[i] *= m.value(norms[i]);
  return out;
}

SpectralField apply_radial_multiplier(const SpectralField& f, const std::function<cplx(double)>& m) {
  return apply_radial_multiplier(f, RadialSymbol{m, m(0.0)});
}

SpectralField abs_grad(const SpectralField& f) {
  return apply_radial_multiplier(f, RadialSymbol{[](double r) { return cplx(r); }, cplx(0.0)});
}

SpectralField bracket_grad(const SpectralField& f) {
  return apply_radial_multiplier(f, RadialSymbol{[](double r) { return cplx(std::sqrt(1.0 + r * r)); }, cplx(1.0)});
}

SpectralField inverse_abs_grad(const SpectralField& f) {
  return apply_radial_multiplier(f, RadialSymbol{[](double r) { return cplx(1.0 / r); }, std::nullopt});
}

SpectralField schrodinger_propagate(const SpectralField& f, double t) {
  SpectralField out = f.to_frequency();
  if (t == 0.0) return out;
  const auto& norms = out.grid().frequency_norms();
  auto& c = out.values();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::polar(1.0, -t * norms[i] * norms[i]);
  return out;
}

SpectralField half_wave_propagate(const SpectralField& f, double t, double alpha) {
  require(alpha > 0.0, "half-wave propagator: alpha must be positive");
  SpectralField out = f.to_frequency();
  if (t == 0.0) return out;
  const auto& norms = out.grid().frequency_norms();
  auto& c = out.values();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::polar(1.0, alpha * t * norms[i]);
  return out;
}

SpectralField zero_nyquist(const SpectralField& f) {
  SpectralField out = f.to_frequency();
  const GridSpec& g = out.grid();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.is_nyquist(i)) out[i] = 0.0;
  return out;
}

double gradient_norm_squared(const SpectralField& f) {
  SpectralField c = f.to_frequency();
  const auto& norms = c.grid().frequency_norms();
  double s = 0.0;
  for (std::size_t i = 0; i < c.values().size(); ++i) s += norms[i] * norms[i] * std::norm(c[i]);
  return s * c.grid().volume();
}

double h1_norm(const SpectralField& f) {
  return std::sqrt(f.l2_norm_squared() + gradient_norm_squared(f));
}

double lq_norm(const SpectralField& f, double q) {
  require(q >= 1.0, "lq_norm: q must be >= 1");
  SpectralField p = f.to_physical();
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& c : p.values()) m = std::max(m, std::abs(c));
    return m;
  }
  double s = 0.0;
  const double half = 0.5 * q;
  if (half == std::floor(half) && half <= 8.0) {
    const int e = static_cast<int>(half);
    for (const auto& c : p.values()) {
      const double n = std::norm(c);
      double v = n;
      for (int i = 1; i < e; ++i) v *= n;
      s += v;
    }
  } else {
    for (const auto& c : p.values()) s += std::pow(std::abs(c), q);
  }
  return std::pow(s * p.grid().cell_volume(), 1.0 / q);
}

namespace detail {

void embed_coefficients(const GridSpec& g, const std::vector<cplx>& c, int m, std::vector<cplx>& out) {
  const int n = g.points();
  out.assign(static_cast<std::size_t>(m) * m * m, cplx(0.0));
  auto wrap = [m](int k) { return k >= 0 ? k : k + m; };
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const int a = wrap(g.wavenumber(i));
    for (int j = 0; j < n; ++j) {
      const int b = wrap(g.wavenumber(j));
      for (int l = 0; l < n; ++l, ++idx) {
        const int d = wrap(g.wavenumber(l));
        out[(static_cast<std::size_t>(a) * m + b) * m + d] = c[idx];
      }
    }
  }
}

void extract_coefficients(const GridSpec& g, const std::vector<cplx>& big, int m, std::vector<cplx>& c) {
  const int n = g.points();
  auto wrap = [m](int k) { return k >= 0 ? k : k + m; };
  const double scale = 1.0 / (static_cast<double>(m) * m * m);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const int a = wrap(g.wavenumber(i));
    for (int j = 0; j < n; ++j) {
      const int b = wrap(g.wavenumber(j));
      for (int l = 0; l < n; ++l, ++idx) {
        const int d = wrap(g.wavenumber(l));
        c[idx] = big[(static_cast<std::size_t>(a) * m + b) * m + d] * scale;
      }
    }
  }
}

}  // namespace detail

using detail::embed_coefficients;
using detail::extract_coefficients;

SpectralField padded_product(const SpectralField& f, const SpectralField& g, bool conjugate_g) {
  require_same_grid(f, g);
  const GridSpec& grid = f.grid();
  const int m = 3 * grid.points() / 2;
  std::vector<cplx> a, b;
  embed_coefficients(grid, f.to_frequency().values(), m, a);
  embed_coefficients(grid, g.to_frequency().values(), m, b);
  fft::backward(m, a.data(), a.data());
  fft::backward(m, b.data(), b.data());
  if (conjugate_g) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= std::conj(b[i]);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  }
  fft::forward(m, a.data(), a.data());
  SpectralField out(grid, Side::frequency);
  extract_coefficients(grid, a, m, out.values());
  return out;
}

SpectralField collocation_product(const SpectralField& f, const SpectralField& g, bool conjugate_g) {
  require_same_grid(f, g);
  SpectralField a = f.to_physical();
  SpectralField b = g.to_physical();
  for (std::size_t i = 0; i < a.values().size(); ++i) a[i] *= conjugate_g ? std::conj(b[i]) : b[i];
  return a;
}

}  // namespace zakharov
