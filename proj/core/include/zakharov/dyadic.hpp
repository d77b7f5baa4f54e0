#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zakharov/grid.hpp"

namespace zakharov {

// Degree-9 smoothstep: 0 for x <= 0, 1 for x >= 1, derivatives 1..4 vanish
// at both ends, S(x) + S(1 - x) = 1.
double smoothstep(double x);

// eta0 = 1 on [0, 5/4], 0 on [8/5, inf).
double eta0(double r);
// rho_k(r) = eta0(r / 2^k) - eta0(r / 2^{k-1}).
double rho(int k, double r);
// rho_{<=k}(r) = eta0(r / 2^k).
double rho_le(int k, double r);

enum class Band { exact, at_most, at_least };

// P_k, P_{<=k}, P_{>=k} = 1 - P_{<=k-1}. k must lie in [k_min, k_max].
SpectralField lp_project(const SpectralField& f, Band band, int k);

/*
 * Lattice block decomposition used by every dyadic sum: blocks b in
 * [k_min - 1, k_max], where the bottom block k_min - 1 is the zero mode
 * (rho_{<=k_min-1} vanishes on every other lattice point) and the others are
 * rho_b. Cumulative sums over blocks b <= j are rho_{<=j} for j >= k_min - 1
 * and zero below, so the blocks sum to rho_{<=k_max} exactly.
 */
int bottom_block(const GridSpec& g);
double block_weight(const GridSpec& g, int b, double r);
double block_cumulative(const GridSpec& g, int j, double r);

enum class Para { LH, HL, HH, alphaL, XL, R };
Para parse_para(const std::string& name);
std::string to_string(Para kind);

// Separable terms: the pair weight is sum_t on_f(|p|) on_g(|q|).
struct ParaTerm {
  std::function<double(double)> on_f;
  std::function<double(double)> on_g;
};
std::vector<ParaTerm> paraproduct_terms(const GridSpec& g, Para kind, double alpha);

// Pair weight of the paraproduct kind at f-frequency norm p and g-frequency norm q.
double paraproduct_mask(const GridSpec& g, Para kind, double alpha, double p, double q);
// Index-set membership of a block b in the alpha-aligned band |b - log2 alpha| <= 4.
bool in_alpha_band(int b, double alpha);
// True when XL has at least one block pair with lattice support.
bool xl_support_nonempty(const GridSpec& g, double alpha);

// (fg)_kind computed as physical-space products of band-limited factors on
// the 3/2-padded grid, truncated back to the lattice.
SpectralField paraproduct(const SpectralField& f, const SpectralField& g, Para kind, double alpha);

// (sum_k 2^{2 k mu} ||P_k f||_{L^q}^2)^{1/2} over k in [k_min, k_max].
double besov_norm(const SpectralField& f, double mu, double q);
// Per block k in [k_min, k_max]: ||P_k f||_{L^q}.
std::vector<double> block_lq_norms(const SpectralField& f, double q);
// ||(1 - rho_{<=k_max}) f||_{L^2}: mass outside the resolved dyadic range.
double out_of_range_mass(const SpectralField& f);

}  // namespace zakharov
