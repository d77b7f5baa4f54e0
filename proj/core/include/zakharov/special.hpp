#pragma once

#include <vector>

#include "zakharov/grid.hpp"

namespace zakharov {

// J_mu(t) for half-integer mu = k + 1/2, t > 0.
double bessel_j(double mu, double t);

// Spherical Bessel functions j_0..j_kmax at t >= 0 (out has kmax + 1 entries).
void spherical_bessel_j(int kmax, double t, double* out);

inline int harmonic_count(int lmax) { return (lmax + 1) * (lmax + 1); }
inline int harmonic_index(int l, int m) { return l * l + l + m; }

/*
 * Real orthonormal spherical harmonics on S^2 (surface measure), no
 * Condon-Shortley phase:
 *   Y_{l,0} = P_l^0,  Y_{l,m} = sqrt2 P_l^m cos(m phi),  Y_{l,-m} = sqrt2 P_l^m sin(m phi)
 * with P_l^m the normalized associated Legendre functions. Output is indexed by
 * harmonic_index(l, m).
 */
void real_spherical_harmonics(int lmax, const Vec3& unit, double* out);
// Normalized associated Legendre table, entry [l*(l+1)/2 + m] for 0 <= m <= l.
void normalized_legendre(int lmax, double x, std::vector<double>& out);

}  // namespace zakharov
