#include "zakharov/sampler.hpp"

#include <cmath>
#include <numbers>

#include "padding.hpp"
#include "zakharov/error.hpp"
#include "zakharov/fft.hpp"

namespace zakharov {

FieldSampler::FieldSampler(const SpectralField& f, SampleMethod method, int oversample, int stencil)
    : grid_(f.grid()), method_(method), coeffs_(f.to_frequency().values()), stencil_(stencil) {
  if (method_ != SampleMethod::fast) return;
  require(oversample >= 1 && stencil >= 2, "sampler: invalid oversampling parameters");
  m_ = oversample * grid_.points();
  detail::embed_coefficients(grid_, coeffs_, m_, fine_);
  // Centered nodes x_j = (j - m/2) L/m pick up (-1)^n.
  const std::size_t mm = static_cast<std::size_t>(m_);
  std::size_t idx = 0;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int l = 0; l < m_; ++l, ++idx)
        if ((i + j + l) & 1) fine_[idx] = -fine_[idx];
  (void)mm;
  fft::backward(m_, fine_.data(), fine_.data());
}

cplx FieldSampler::operator()(const Vec3& x) const {
  return method_ == SampleMethod::exact ? exact_at(x) : fast_at(x);
}

cplx FieldSampler::exact_at(const Vec3& x) const {
  const int n = grid_.points();
  const double dk = grid_.frequency_step();
  std::vector<cplx> e0(n), e1(n), e2(n);
  for (int i = 0; i < n; ++i) {
    const double k = dk * grid_.wavenumber(i);
    e0[i] = std::polar(1.0, k * x[0]);
    e1[i] = std::polar(1.0, k * x[1]);
    e2[i] = std::polar(1.0, k * x[2]);
  }
  cplx total = 0.0;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    cplx s1 = 0.0;
    for (int j = 0; j < n; ++j) {
      cplx s2 = 0.0;
      for (int l = 0; l < n; ++l, ++idx) s2 += coeffs_[idx] * e2[l];
      s1 += s2 * e1[j];
    }
    total += s1 * e0[i];
  }
  return total;
}

cplx FieldSampler::fast_at(const Vec3& x) const {
  const double h = grid_.box_length() / m_;
  const int w = stencil_;
  int base[3];
  double wt[3][16];
  for (int a = 0; a < 3; ++a) {
    const double s = x[a] / h + m_ / 2;  // fractional node coordinate
    const int left = static_cast<int>(std::floor(s)) - (w / 2 - 1);
    base[a] = left;
    const double t = s - left;  // in [w/2 - 1, w/2)
    // Lagrange weights on nodes 0..w-1 at position t.
    for (int j = 0; j < w; ++j) {
      double num = 1.0, den = 1.0;
      for (int k = 0; k < w; ++k) {
        if (k == j) continue;
        num *= t - k;
        den *= j - k;
      }
      wt[a][j] = num / den;
    }
  }
  auto wrap = [this](int i) { i %= m_; return i < 0 ? i + m_ : i; };
  cplx total = 0.0;
  for (int i = 0; i < w; ++i) {
    const std::size_t ii = static_cast<std::size_t>(wrap(base[0] + i)) * m_;
    cplx s1 = 0.0;
    for (int j = 0; j < w; ++j) {
      const std::size_t jj = (ii + wrap(base[1] + j)) * m_;
      cplx s2 = 0.0;
      for (int l = 0; l < w; ++l) s2 += wt[2][l] * fine_[jj + wrap(base[2] + l)];
      s1 += wt[1][j] * s2;
    }
    total += wt[0][i] * s1;
  }
  return total;
}

std::vector<cplx> FieldSampler::on_spheres(const std::vector<double>& radii, const SphereRule& sphere,
                                           const Vec3& center) const {
  const std::size_t nodes = sphere.size();
  std::vector<cplx> out(radii.size() * nodes);
  if (method_ == SampleMethod::fast) {
    for (std::size_t r = 0; r < radii.size(); ++r)
      for (std::size_t j = 0; j < nodes; ++j) {
        const auto& u = sphere.nodes[j];
        out[r * nodes + j] = fast_at({center[0] + radii[r] * u[0], center[1] + radii[r] * u[1],
                                      center[2] + radii[r] * u[2]});
      }
    return out;
  }
  const int n = grid_.points();
  const double dk = grid_.frequency_step();
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = dk * grid_.wavenumber(i);
  std::vector<cplx> ez(n), ex(n), ey(n), plane(static_cast<std::size_t>(n) * n);
  for (std::size_t r = 0; r < radii.size(); ++r) {
    for (int ring = 0; ring < sphere.n_theta; ++ring) {
      const double ct = sphere.cos_theta[ring];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      const double z = center[2] + radii[r] * ct;
      for (int l = 0; l < n; ++l) ez[l] = std::polar(1.0, k[l] * z);
      std::size_t idx = 0;
      for (std::size_t p = 0; p < plane.size(); ++p) {
        cplx s = 0.0;
        for (int l = 0; l < n; ++l, ++idx) s += coeffs_[idx] * ez[l];
        plane[p] = s;
      }
      for (int q = 0; q < sphere.n_phi; ++q) {
        const double x = center[0] + radii[r] * st * std::cos(sphere.phi[q]);
        const double y = center[1] + radii[r] * st * std::sin(sphere.phi[q]);
        for (int i = 0; i < n; ++i) {
          ex[i] = std::polar(1.0, k[i] * x);
          ey[i] = std::polar(1.0, k[i] * y);
        }
        cplx total = 0.0;
        for (int i = 0; i < n; ++i) {
          cplx s = 0.0;
          const cplx* row = &plane[static_cast<std::size_t>(i) * n];
          for (int j = 0; j < n; ++j) s += row[j] * ey[j];
          total += s * ex[i];
        }
        out[r * nodes + static_cast<std::size_t>(ring) * sphere.n_phi + q] = total;
      }
    }
  }
  return out;
}

}  // namespace zakharov
