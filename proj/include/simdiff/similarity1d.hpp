#pragma once

// Similarity solutions of the 1D diffusion equation u_t = D u_xx:
//
//   u(x,t) = M (Dt)^{-(p+1)/2} phi(s),   s = x / sqrt(Dt),
//
// where phi solves phi'' + (s/2) phi' + ((p+1)/2) phi = 0. Families:
//   ClassicalGaussian(p)  p-th derivative of exp(-s^2/4)/sqrt(4 pi)
//   ExoticTilde(p)        p-th derivative of dawson(s/2)/sqrt(pi), tail ~ s^{-(p+1)}
//   SymmetricF(p)         exp(-s^2/4) 1F1(-p/2; 1/2; s^2/4)
//   AntisymmetricF(p)     s exp(-s^2/4) 1F1((1-p)/2; 3/2; s^2/4)
//   GelRadial(p)          radial gel profile psi_p (see gel3d.hpp), s >= 0 only

#include <numbers>
#include <span>
#include <vector>

#include "simdiff/fields.hpp"

namespace simdiff::similarity {

struct DiffusionParams {
  double d_coeff = 1.0;
  double amplitude = 1.0;

  void validate() const;
};

/// First-integral constant C of (d/ds + s/2) phi_exotic_0 = C.
inline constexpr double kFirstIntegralConstant = 0.5 * std::numbers::inv_sqrtpi;

/// phi_tail refuses |s| below this; the p=0 asymptote errs by > 10% there.
inline constexpr double kTailGuard = 5.0;

/// Scaling function value. Throws std::invalid_argument for an invalid family
/// and std::domain_error for GelRadial with s < 0.
double phi(const SolutionFamily& family, double s);

/// Constant C with phi(s) ~ C s^{-(p+1)} as s -> +infinity (0 for the
/// Gaussian family and for degenerate integer limits).
double tail_constant(const SolutionFamily& family);

/// Leading asymptotic value of phi for |s| >= kTailGuard, with the family's
/// parity applied for s < 0. Throws std::domain_error for |s| < kTailGuard.
double phi_tail(const SolutionFamily& family, double s);

/// M (Dt)^{-(p+1)/2} phi(x / sqrt(Dt)). Throws std::domain_error for t <= 0.
double u_similarity(const SolutionFamily& family, const DiffusionParams& params, double x,
                    double t);

/// Left side of the scaling ODE at s with derivatives from Richardson central
/// differences of phi (step h). For GelRadial the radial form
///   2 s^2 psi'' + s (s^2 + 4) psi' + ((p+1) s^2 - 4) psi
/// is returned instead.
double ode_residual(const SolutionFamily& family, double s, double h = 2e-3);

/// phi~_0'(s) + (s/2) phi~_0(s) - (4 pi)^{-1/2}, derivative by Richardson
/// central differences of step h.
double first_integral_residual(double s, double h = 1e-3);

/// theta^{p+1} u(theta x, theta^2 t) - u(x, t). For theta < 0 this vanishes only
/// for families of parity (-1)^{p+1}; non-integer p with theta < 0 is a domain
/// error.
double similarity_check(const SolutionFamily& family, const DiffusionParams& params, double x,
                        double t, double theta);

/// Amplitudes M_0..M_{n_max} such that sum_p M_p u_p(x, t0) is the least-squares
/// fit of the profile on its own grid (u_p = classical family, unit amplitude).
/// Requires the grid to cover [-10 sqrt(D t0), 10 sqrt(D t0)] and n_max <= 30.
/// Throws IllConditionedError when cond(A^T A) of the column-scaled design
/// matrix exceeds 1e12.
std::vector<double> hermite_project(const Profile& initial, double t0, double d_coeff,
                                    int n_max);

/// sum_p coeffs[p] u_p(x, t) sampled on grid.
Profile reconstruct(std::span<const double> coeffs, double t, double d_coeff,
                    std::span<const double> grid);

}  // namespace simdiff::similarity
