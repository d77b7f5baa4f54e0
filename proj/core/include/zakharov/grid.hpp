#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace zakharov {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

enum class Side : std::uint32_t { frequency = 0, physical = 1 };

/*
 * Periodic box [-L/2, L/2)^3 sampled at N points per axis.
 *
 *   physical node   x_j = (j - N/2) h,             h  = L / N
 *   frequency node  xi_n = n dk,  n in [-N/2, N/2),  dk = 2 pi / L
 *
 * Frequency arrays are stored in FFT order (index i <-> n = i or i - N),
 * physical arrays in node order. A field is f(x) = sum_n c_n e^{i xi_n x},
 * so ||f||_{L^2}^2 = V sum |c_n|^2 and the continuous transform of the
 * periodic piece is V c_n.
 */
class GridSpec {
 public:
  GridSpec() = default;
  GridSpec(double box_length, int points);

  double box_length() const { return L_; }
  int points() const { return N_; }
  std::size_t size() const { return static_cast<std::size_t>(N_) * N_ * N_; }
  double spacing() const { return L_ / N_; }
  double frequency_step() const { return dk_; }
  // Largest |xi| along a coordinate axis.
  double max_frequency() const { return 0.5 * N_ * dk_; }
  double volume() const { return L_ * L_ * L_; }
  double cell_volume() const { double h = spacing(); return h * h * h; }

  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }

  int wavenumber(int i) const { return i < N_ / 2 ? i : i - N_; }
  int fft_index(int n) const { return n >= 0 ? n : n + N_; }
  double position(int j) const { return (j - N_ / 2) * spacing(); }
  std::size_t index(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * N_ + j) * N_ + l;
  }
  std::array<int, 3> triple(std::size_t idx) const;
  Vec3 frequency(std::size_t idx) const;
  Vec3 node(std::size_t idx) const;
  double frequency_norm(std::size_t idx) const { return (*norms_)[idx]; }
  const std::vector<double>& frequency_norms() const { return *norms_; }
  // True when any component of the lattice index equals -N/2.
  bool is_nyquist(std::size_t idx) const;

  bool operator==(const GridSpec& o) const { return N_ == o.N_ && L_ == o.L_; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }

 private:
  double L_ = 0.0;
  int N_ = 0;
  double dk_ = 0.0;
  int k_min_ = 0;
  int k_max_ = 0;
  std::shared_ptr<const std::vector<double>> norms_;
};

GridSpec make_grid(double box_length, int points);

class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid, Side side = Side::frequency);
  SpectralField(const GridSpec& grid, Side side, std::vector<cplx> values);

  // Samples f at the physical nodes.
  static SpectralField from_function(const GridSpec& grid,
                                     const std::function<cplx(const Vec3&)>& f);

  const GridSpec& grid() const { return grid_; }
  Side side() const { return side_; }
  const std::vector<cplx>& values() const { return data_; }
  std::vector<cplx>& values() { return data_; }
  cplx operator[](std::size_t i) const { return data_[i]; }
  cplx& operator[](std::size_t i) { return data_[i]; }
  bool empty() const { return data_.empty(); }

  SpectralField to_frequency() const;
  SpectralField to_physical() const;
  SpectralField as(Side side) const { return side == Side::frequency ? to_frequency() : to_physical(); }

  double l2_norm_squared() const;
  double l2_norm() const;
  bool is_finite() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx s);

 private:
  GridSpec grid_;
  Side side_ = Side::frequency;
  std::vector<cplx> data_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cplx s, SpectralField a);
SpectralField operator*(SpectralField a, cplx s);

void require_same_grid(const SpectralField& a, const SpectralField& b);

// Radial Fourier multiplier m(|xi|). The value at xi = 0 must be given
// explicitly; when absent the zero mode must vanish (|c_0| <= 1e-12 relative)
// and is mapped to zero, otherwise a PreconditionError is thrown.
struct RadialSymbol {
  std::function<cplx(double)> value;
  std::optional<cplx> at_zero;
};

SpectralField apply_radial_multiplier(const SpectralField& f, const RadialSymbol& m);
SpectralField apply_radial_multiplier(const SpectralField& f, const std::function<cplx(double)>& m);

SpectralField abs_grad(const SpectralField& f);        // |nabla|
SpectralField bracket_grad(const SpectralField& f);    // <nabla> = (1 + |nabla|^2)^{1/2}
SpectralField inverse_abs_grad(const SpectralField& f);

// e^{it Delta}: multiplies xi-coefficients by e^{-it|xi|^2}.
SpectralField schrodinger_propagate(const SpectralField& f, double t);
// e^{i alpha t |nabla|}: multiplies by e^{i alpha t |xi|}.
SpectralField half_wave_propagate(const SpectralField& f, double t, double alpha);

// Sets every coefficient with a -N/2 component to zero.
SpectralField zero_nyquist(const SpectralField& f);

double h1_norm(const SpectralField& f);                 // ||<nabla> f||_{L^2}
double gradient_norm_squared(const SpectralField& f);   // ||nabla f||_{L^2}^2
// Spatial L^q norm by grid quadrature; q = infinity gives the max.
double lq_norm(const SpectralField& f, double q);

// Exact lattice-truncated product f * g (or f * conj(g)) via 3/2 zero padding.
SpectralField padded_product(const SpectralField& f, const SpectralField& g, bool conjugate_g = false);
// Pointwise collocation product on the grid itself (aliased).
SpectralField collocation_product(const SpectralField& f, const SpectralField& g, bool conjugate_g = false);

}  // namespace zakharov
