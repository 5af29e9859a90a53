#pragma once

// Spherically symmetric relaxation of a swollen gel. The radial displacement
// U(r,t) obeys [d/dt - D (d^2/dr^2 - 2/r^2)] (r U) = 0 with the cooperative
// diffusion constant D = (K + 4 mu / 3) / f, and its similarity solutions are
//
//   U_p(r,t) = A (Dt)^{-(p+1)/2} psi_p(r / sqrt(Dt)),
//   psi_p(s) = s exp(-s^2/4) 1F1(3/2 - p/2; 5/2; s^2/4)
//            = s 1F1(1 + p/2; 5/2; -s^2/4),
//
// normalized so psi_p'(0) = 1. For p = 1 the density deviation
// -(d/dr + 2/r) U is Gaussian.

#include <span>

#include "simdiff/fields.hpp"

namespace simdiff::gel {

struct GelParams {
  double friction = 1.0;
  double shear_mod = 0.375;
  double bulk_mod = 0.5;
  double strain = 0.01;
  double core_radius = 1.0;

  /// Throws std::invalid_argument unless every field is positive and finite.
  void validate() const;
  /// D = (K + 4 mu / 3) / f
  double diffusion() const;
  /// V0 = 4 pi R0^3 / 3
  double core_volume() const;
};

/// Radial scaling function; psi_p(0) = 0, psi_p'(0) = 1.
/// Throws std::domain_error for s < 0 and std::invalid_argument for p < 0.
double psi(double p, double s);

/// Derivative of psi_1:
///   -(12 sqrt(pi) / s^3) erf(s/2) + 3 (1 + 4/s^2) exp(-s^2/4),
/// with a Taylor branch below s = 0.05 where the closed form cancels.
double psi1_prime(double s);

/// Amplitude that ties U_1 to an injection of volume eps V0:
/// eps V0 / (24 pi^{3/2}). Far field then equals eps V0 / (4 pi r^2).
double matched_amplitude(const GelParams& params);

/// A (Dt)^{-(p+1)/2} psi_p(r / sqrt(Dt)) with D from params.
double displacement(const GelParams& params, double p, double r, double t, double amplitude);

/// -eps V0 exp(-r^2 / 4Dt) / (4 pi D t)^{3/2}; never positive.
double density_deviation(const GelParams& params, double r, double t);

/// Displacement right after injection: (eps/3) r inside R0, eps V0 / (4 pi r^2)
/// outside.
RadialField injection_ic(const GelParams& params, std::span<const double> radii);

/// max |r^{-2} d(r^2 U)/dr| / eps over grid points whose stencil lies beyond
/// 1.05 R0. Throws std::invalid_argument for a density field or when fewer than
/// 10 points lie beyond R0.
double incompressibility_residual(const RadialField& field, const GelParams& params);

/// Relative density deviation -(1/r^2) d(r^2 U)/dr of a displacement field,
/// by three-point differences (one-sided at the ends).
RadialField density_from_displacement(const RadialField& field);

/// Solvent volume int (-drho/rho0) 4 pi r^2 dr of a density field: trapezoid
/// rule on the grid plus the ball [0, r_0] at the innermost value.
double solvent_volume(const RadialField& density);

}  // namespace simdiff::gel
