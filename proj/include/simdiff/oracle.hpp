#pragma once

// Finite-difference reference solver. Crank-Nicolson in time, second-order
// central differences in space, Thomas algorithm for the tridiagonal solve.
// Deliberately independent of the special-function code: it only sees
// sampled profiles and boundary callables.

#include <cstddef>
#include <functional>
#include <vector>

#include "simdiff/fields.hpp"

namespace simdiff::oracle {

struct Grid1D {
  double x_min = -40.0;
  double x_max = 40.0;
  std::size_t n_points = 4001;

  void validate() const;
  double spacing() const;
  std::vector<double> points() const;
};

enum class BoundaryKind { dirichlet_from_callable, zero };

struct EvolveSpec {
  double d_coeff = 1.0;
  double t_start = 1.0;
  double t_end = 2.0;
  double dt = 1e-3;
  BoundaryKind bc = BoundaryKind::dirichlet_from_callable;

  void validate() const;
};

/// Boundary value at (position, time). evolve_1d expects u, evolve_radial
/// expects the displacement U (it pins r U internally).
using BoundaryFn = std::function<double(double, double)>;

/// Half-width of the truncated domain: max(40, 20 sqrt(D t_end)).
double default_half_width(double d_coeff, double t_end);

/// Grid1D on [-L, L] with the default 4001 points.
Grid1D default_grid(double d_coeff, double t_end, std::size_t n_points = 4001);

/// Time step with D dt / dx^2 = 1 for a grid spacing dx.
double default_dt(double d_coeff, double dx);

/// Integrates u_t = D u_xx from spec.t_start to spec.t_end on the (uniform)
/// grid of `initial`; the end points are pinned to bc each step. The last step
/// is shortened so the run ends exactly at t_end.
/// Throws std::invalid_argument for a non-uniform grid, fewer than three points,
/// a missing callable or a profile time different from t_start.
Profile evolve_1d(const Profile& initial, const EvolveSpec& spec, const BoundaryFn& bc = {});

/// Integrates [d/dt - D (d^2/dr^2 - 2/r^2)] W = 0 for W = r U on radii
/// Δr, 2Δr, ..., with W(0) = 0 and the outermost point pinned to r bc(r, t).
/// Throws std::invalid_argument unless the radii are uniform and start at Δr.
RadialField evolve_radial(const RadialField& initial, const EvolveSpec& spec,
                          const BoundaryFn& bc = {});

/// u_t - D u_xx at (x, t) by Richardson central differences of step h in both
/// variables. Applied to r * rho(r, t) it checks the radial density equation.
double pde_residual(const std::function<double(double, double)>& fn, double x, double t,
                    double h, double d_coeff);

}  // namespace simdiff::oracle
