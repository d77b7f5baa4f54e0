#pragma once

#include <functional>
#include <string>

#include "zakharov/trajectory.hpp"

namespace zakharov {

// M(u) = int |u|^2 / 2.
double mass(const SpectralField& u);
// E_Z(u, v) = int |grad u|^2 / 2 + |v|^2 / 4 + Re(v) |u|^2 / 2.
double energy(const SpectralField& u, const SpectralField& v);
// K(u) = int |grad u|^2 - (3/4) |u|^4.
double k_functional(const SpectralField& u);

// Schrodinger coupling term: Re(v) u (physical system) or v u.
enum class Coupling { real_part, complex };
// Nonlinear products on the grid (aliased) or truncated through 3/2 padding.
enum class ProductMode { collocation, dealiased };

Coupling parse_coupling(const std::string& name);
std::string to_string(Coupling c);

struct EvolveOptions {
  Coupling coupling = Coupling::real_part;
  ProductMode products = ProductMode::collocation;
  int snapshot_every = 0;  // steps between stored snapshots; 0 picks about 100 snapshots
  // Called after every step with (time, u, v) in frequency representation.
  std::function<void(double, const SpectralField&, const SpectralField&)> observer;
};

// Largest dt keeping the per-step phase of the top lattice mode below pi.
double dt_stability(const GridSpec& g);

/*
 * Strang splitting for
 *   i u_t + Delta u = Re(v) u,   i v_t + alpha |nabla| v = -alpha |nabla| |u|^2:
 * half linear step, full nonlinear step, half linear step.
 */
Trajectory evolve_forward(const SpectralField& u0, const SpectralField& v0, double alpha, double t0, double t1,
                          double dt, const EvolveOptions& options = {});

}  // namespace zakharov
