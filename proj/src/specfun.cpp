#include "simdiff/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "simdiff/errors.hpp"

namespace simdiff::specfun {

namespace {

// Beyond this argument the Dawson asymptotic series, truncated at its
// smallest term, is accurate to ~exp(-x^2) < 1e-21 relative.
constexpr double kDawsonAsymptoticFrom = 7.0;

// Above this z the large-z expansion of exp(-z) 1F1 has a smallest term of
// order exp(-z) * sqrt(2 pi z), far below double precision.
constexpr double kKummerAsymptoticFrom = 60.0;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

template <class T>
T dawson_nonneg(T x) {
  const T eps = std::numeric_limits<T>::epsilon();
  if (x < T(kDawsonAsymptoticFrom)) {
    // F(x) = x exp(-x^2) sum_n x^(2n) / (n! (2n+1)): every term positive.
    const T x2 = x * x;
    const T x2_err = std::fma(x, x, -x2);
    T term = 1;
    T sum = 1;
    for (int n = 1; n < 2000; ++n) {
      term *= x2 / T(n);
      const T add = term / T(2 * n + 1);
      sum += add;
      if (add <= eps * sum) break;
    }
    return x * std::exp(-x2) * (T(1) - x2_err) * sum;
  }
  // F(x) ~ 1/(2x) sum_k (2k-1)!! / (2x^2)^k
  const T inv = T(1) / (T(2) * x * x);
  T term = 1;
  T sum = 1;
  for (int k = 1; k < 500; ++k) {
    const T next = term * T(2 * k - 1) * inv;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term <= eps * sum) break;
  }
  return sum / (T(2) * x);
}

void check_kummer_args(double a, double b, double z) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z)) {
    throw std::invalid_argument("kummer_1f1: non-finite argument");
  }
  if (is_nonpositive_integer(b)) {
    throw std::invalid_argument("kummer_1f1: b must not be zero or a negative integer, got b=" +
                                std::to_string(b));
  }
}

// Plain Maclaurin series. Stops at machine precision once the terms are
// monotonically decreasing; a terminating series (a = -n) stops at its degree.
double kummer_taylor(double a, double b, double z, const Accuracy& acc) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double settle = std::abs(z) + std::abs(a) + std::abs(b);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < acc.max_terms; ++n) {
    term *= (a + n) * z / ((b + n) * (n + 1));
    if (term == 0.0) return sum;
    sum += term;
    if (n >= settle && std::abs(term) <= eps * std::abs(sum)) return sum;
  }
  throw ConvergenceError("kummer_1f1: series did not converge within " +
                         std::to_string(acc.max_terms) + " terms (a=" + std::to_string(a) +
                         ", b=" + std::to_string(b) + ", z=" + std::to_string(z) + ")");
}

// exp(-z) 1F1(a;b;z) ~ Gamma(b)/Gamma(a) z^(a-b) sum_k (b-a)_k (1-a)_k / (k! z^k)
double kummer_scaled_asymptotic(double a, double b, double z, const Accuracy& acc) {
  const double eps = std::numeric_limits<double>::epsilon();
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < acc.max_terms; ++k) {
    const double next = term * (b - a + k) * (1.0 - a + k) / ((k + 1) * z);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) <= eps * std::abs(sum)) break;
  }
  if (std::abs(term) > acc.rel_tol * std::abs(sum)) {
    throw ConvergenceError("kummer_1f1: asymptotic expansion not accurate enough at z=" +
                           std::to_string(z));
  }
  return std::tgamma(b) * reciprocal_gamma(a) * std::pow(z, a - b) * sum;
}

}  // namespace

void Accuracy::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("Accuracy: rel_tol must be positive");
  if (max_terms < 1) throw std::invalid_argument("Accuracy: max_terms must be >= 1");
}

double erf(double x) {
  const double v = std::erf(std::abs(x));
  return std::signbit(x) ? -v : v;
}

double dawson(double x) {
  const double v = dawson_nonneg(std::abs(x));
  return std::signbit(x) ? -v : v;
}

long double dawson_ext(long double x) {
  const long double v = dawson_nonneg(std::abs(x));
  return std::signbit(x) ? -v : v;
}

double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

double kummer_1f1_scaled(double a, double b, double z, const Accuracy& acc) {
  check_kummer_args(a, b, z);
  acc.validate();
  if (z < 0.0) return kummer_1f1(b - a, b, -z, acc);
  if (z < kKummerAsymptoticFrom || is_nonpositive_integer(a)) {
    return std::exp(-z) * kummer_taylor(a, b, z, acc);
  }
  return kummer_scaled_asymptotic(a, b, z, acc);
}

double kummer_1f1(double a, double b, double z, const Accuracy& acc) {
  check_kummer_args(a, b, z);
  acc.validate();
  if (z == 0.0 || a == 0.0) return 1.0;
  if (z < 0.0) return kummer_1f1_scaled(b - a, b, -z, acc);
  if (z < kKummerAsymptoticFrom || is_nonpositive_integer(a)) {
    const double v = kummer_taylor(a, b, z, acc);
    if (!std::isfinite(v)) throw std::overflow_error("kummer_1f1: value overflows double");
    return v;
  }
  const double scaled = kummer_scaled_asymptotic(a, b, z, acc);
  if (scaled == 0.0) return 0.0;
  const double v = std::copysign(std::exp(z + std::log(std::abs(scaled))), scaled);
  if (!std::isfinite(v)) throw std::overflow_error("kummer_1f1: value overflows double");
  return v;
}

double gaussian_deriv(int p, double s) {
  if (p < 0) throw std::invalid_argument("gaussian_deriv: p must be non-negative");
  const double phi0 = std::exp(-0.25 * s * s) * (0.5 * std::numbers::inv_sqrtpi);
  double prev = 1.0;
  double cur = -0.5 * s;
  if (p == 0) return phi0;
  for (int n = 1; n < p; ++n) {
    const double next = -0.5 * s * cur - 0.5 * n * prev;
    prev = cur;
    cur = next;
  }
  return cur * phi0;
}

}  // namespace simdiff::specfun
