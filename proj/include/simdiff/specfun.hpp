#pragma once

// Special-function kernels: error function, Dawson integral, Kummer's
// confluent hypergeometric function and exact Gaussian derivatives.
// All functions are pure and thread-safe.

namespace simdiff::specfun {

struct Accuracy {
  double rel_tol = 1e-12;
  int max_terms = 500;

  /// Throws std::invalid_argument unless rel_tol > 0 and max_terms >= 1.
  void validate() const;
};

/// Standard error function (2/sqrt(pi)) * int_0^x exp(-u^2) du.
/// Exactly odd: erf(-x) == -erf(x) bit for bit.
double erf(double x);

/// Dawson integral F(x) = exp(-x^2) * int_0^x exp(t^2) dt. Exactly odd.
double dawson(double x);

/// Extended-precision Dawson integral, used where a caller subtracts nearly
/// equal multiples of F and needs the extra guard digits.
long double dawson_ext(long double x);

/// Kummer's function 1F1(a; b; z) (Taylor series for 0 <= z < 60, large-z
/// asymptotics above, Kummer transformation for z < 0).
/// Throws std::invalid_argument for b in {0, -1, -2, ...},
/// std::overflow_error if the value is not representable, and
/// ConvergenceError if the series exceeds acc.max_terms.
double kummer_1f1(double a, double b, double z, const Accuracy& acc = {});

/// exp(-z) * 1F1(a; b; z) for z >= 0, evaluated without forming exp(z).
/// Equal to 1F1(b - a; b; -z) by the Kummer transformation.
double kummer_1f1_scaled(double a, double b, double z, const Accuracy& acc = {});

/// 1 / Gamma(x), equal to 0 at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

/// p-th derivative of exp(-s^2/4)/sqrt(4 pi), from the three-term recurrence
///   Q_{n+1}(s) = -(s/2) Q_n(s) - (n/2) Q_{n-1}(s),  phi_p = Q_p * phi_0.
/// Throws std::invalid_argument for p < 0.
double gaussian_deriv(int p, double s);

}  // namespace simdiff::specfun
