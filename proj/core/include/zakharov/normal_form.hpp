#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "zakharov/dyadic.hpp"
#include "zakharov/grid.hpp"

namespace zakharov {

// omega_r(xi - eta, eta) = |xi|^2 + alpha |xi - eta| - |eta|^2 with p = xi - eta, q = eta.
double resonance(const Vec3& p, const Vec3& q, double alpha);

/*
 * Bilinear multiplier T_m(f, g), coefficient of xi:
 *   sum_{p + q = xi} mask(p, q) m(p, q) c_p(f) c_q(g),
 * over lattice pairs whose sum stays on the lattice. With m = 1 and no mask
 * this is the lattice-truncated product f g.
 */
struct BilinearSymbol {
  std::function<cplx(const Vec3& p, const Vec3& q)> value;
  bool masked = false;
  std::vector<ParaTerm> mask;  // pair weight sum_t on_f(|p|) on_g(|q|)
  // Optional denominator; |den| < floor on an active pair is fatal.
  std::function<double(const Vec3& p, const Vec3& q)> denominator;
  double floor = 1e-6;
};

inline constexpr double kDefaultPairBudget = 17179869184.0;  // 2^34

BilinearSymbol unit_symbol();
BilinearSymbol masked_symbol(BilinearSymbol base, std::vector<ParaTerm> mask);
// Symbol P_XL / omega_r.
BilinearSymbol omega_b_symbol(const GridSpec& g, double alpha);

SpectralField bilinear_apply(const SpectralField& f, const SpectralField& g, const BilinearSymbol& sym,
                             double budget = kDefaultPairBudget);

SpectralField omega_b(const SpectralField& v, const SpectralField& u, double alpha,
                      double budget = kDefaultPairBudget);

// min over masked XL pairs of omega_r / min(|xi|^2, alpha |xi - eta| / 4).
struct ResonanceFloor {
  double c0 = 0.0;
  double min_omega = 0.0;
  std::uint64_t pairs = 0;
};
ResonanceFloor xl_resonance_floor(const GridSpec& g, double alpha);

}  // namespace zakharov
