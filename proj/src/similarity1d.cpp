#include "simdiff/similarity1d.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "simdiff/errors.hpp"
#include "simdiff/finite_difference.hpp"
#include "simdiff/gel3d.hpp"
#include "simdiff/specfun.hpp"

namespace simdiff::similarity {

namespace {

using std::numbers::inv_sqrtpi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kMaxConditionNormal = 1e12;
constexpr int kMaxProjectionOrder = 30;

// |s| beyond which the differentiated Dawson asymptotic series replaces the
// polynomial closed form for the exotic family.
constexpr double kExoticAsymptoticFrom = 12.0;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Coefficients c[k] of s^k.
using Poly = std::vector<long double>;

Poly derivative(const Poly& a) {
  Poly d(a.size() > 1 ? a.size() - 1 : 0);
  for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = static_cast<long double>(k) * a[k];
  return d;
}

long double evaluate(const Poly& a, long double s) {
  long double v = 0.0L;
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * s + *it;
  return v;
}

// phi~_p = P_p(s) g(s) + Q_p(s), g = phi~_0, with g' = C - (s/2) g:
//   P_{k+1} = P_k' - (s/2) P_k,   Q_{k+1} = C P_k + Q_k'.
double exotic_closed_form(int p, double s) {
  const long double c = 0.5L * std::numbers::inv_sqrtpi_v<long double>;
  Poly pk{1.0L};
  Poly qk{};
  for (int k = 0; k < p; ++k) {
    Poly pn = derivative(pk);
    pn.resize(pk.size() + 1, 0.0L);
    for (std::size_t j = 0; j < pk.size(); ++j) pn[j + 1] -= 0.5L * pk[j];
    Poly qn = derivative(qk);
    qn.resize(std::max(qn.size(), pk.size()), 0.0L);
    for (std::size_t j = 0; j < pk.size(); ++j) qn[j] += c * pk[j];
    pk = std::move(pn);
    qk = std::move(qn);
  }
  const long double sl = s;
  const long double g = specfun::dawson_ext(0.5L * sl) * std::numbers::inv_sqrtpi_v<long double>;
  return static_cast<double>(evaluate(pk, sl) * g + evaluate(qk, sl));
}

// phi~_0(s) ~ (1/sqrt(pi)) sum_k (2k-1)!! 2^k s^{-(2k+1)}, differentiated p times
// term by term. Valid for s > 0 large; all terms share one sign.
double exotic_asymptotic(int p, double s) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double inv_s = 1.0 / s;
  const double inv_s2 = inv_s * inv_s;
  // k = 0 term: d^p s^{-1} = (-1)^p p! s^{-(p+1)}
  double coef = 1.0;  // (2k-1)!! 2^k
  double rising = factorial(p);  // m (m+1) ... (m+p-1) with m = 2k+1
  double power = std::pow(inv_s, p + 1);
  double term = coef * rising * power;
  double sum = term;
  for (int k = 1; k < 400; ++k) {
    const int m = 2 * k + 1;
    coef *= 2.0 * (2 * k - 1);
    // rising(m) / rising(m-2) = (m+p-1)(m+p-2) / (m-1)(m-2)
    rising *= static_cast<double>(m + p - 1) * (m + p - 2) / (static_cast<double>(m - 1) * (m - 2));
    power *= inv_s2;
    const double next = coef * rising * power;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term <= eps * sum) break;
  }
  return (p % 2 == 0 ? 1.0 : -1.0) * inv_sqrtpi * sum;
}

double exotic_phi(int p, double s) {
  if (p == 0) return specfun::dawson(0.5 * s) * inv_sqrtpi;
  const double a = std::abs(s);
  const double v = a < kExoticAsymptoticFrom ? exotic_closed_form(p, a) : exotic_asymptotic(p, a);
  // parity (-1)^{p+1}
  return (std::signbit(s) && p % 2 == 0) ? -v : v;
}

double symmetric_phi(double p, double s) {
  return specfun::kummer_1f1_scaled(-0.5 * p, 0.5, 0.25 * s * s);
}

double antisymmetric_phi(double p, double s) {
  const double a = std::abs(s);
  const double v = a * specfun::kummer_1f1_scaled(0.5 * (1.0 - p), 1.5, 0.25 * s * s);
  return std::signbit(s) ? -v : v;
}

// theta^e for theta != 0, with e = p + 1; negative theta needs integer p.
double signed_power(double theta, double e) {
  if (theta > 0.0) return std::pow(theta, e);
  if (e != std::floor(e)) {
    throw std::domain_error("similarity_check: negative theta needs an integer exponent");
  }
  const double mag = std::pow(-theta, e);
  return std::fmod(e, 2.0) == 0.0 ? mag : -mag;
}

}  // namespace

void DiffusionParams::validate() const {
  if (!(d_coeff > 0.0) || !std::isfinite(d_coeff)) {
    throw std::invalid_argument("DiffusionParams: d_coeff must be positive");
  }
  if (!std::isfinite(amplitude)) throw std::invalid_argument("DiffusionParams: amplitude not finite");
}

double phi(const SolutionFamily& family, double s) {
  validate(family);
  if (!std::isfinite(s)) throw std::domain_error("phi: s must be finite");
  return std::visit(overloaded{
                        [&](const ClassicalGaussian& f) { return specfun::gaussian_deriv(f.p, s); },
                        [&](const ExoticTilde& f) { return exotic_phi(f.p, s); },
                        [&](const SymmetricF& f) { return symmetric_phi(f.p, s); },
                        [&](const AntisymmetricF& f) { return antisymmetric_phi(f.p, s); },
                        [&](const GelRadial& f) { return gel::psi(f.p, s); },
                    },
                    family);
}

double tail_constant(const SolutionFamily& family) {
  validate(family);
  constexpr double sqrt_pi = 1.0 / inv_sqrtpi;
  return std::visit(
      overloaded{
          [](const ClassicalGaussian&) { return 0.0; },
          [](const ExoticTilde& f) {
            const double sign = f.p % 2 == 0 ? 1.0 : -1.0;
            return sign * factorial(f.p) * inv_sqrtpi;
          },
          // 1F1(a;b;z) ~ Gamma(b)/Gamma(a) e^z z^{a-b} with z = s^2/4
          [](const SymmetricF& f) {
            return std::pow(2.0, f.p + 1.0) * sqrt_pi * specfun::reciprocal_gamma(-0.5 * f.p);
          },
          [](const AntisymmetricF& f) {
            return std::pow(2.0, f.p + 1.0) * sqrt_pi *
                   specfun::reciprocal_gamma(0.5 * (1.0 - f.p));
          },
          [](const GelRadial& f) {
            return 0.75 * sqrt_pi * std::pow(2.0, f.p + 2.0) *
                   specfun::reciprocal_gamma(0.5 * (3.0 - f.p));
          },
      },
      family);
}

double phi_tail(const SolutionFamily& family, double s) {
  if (!(std::abs(s) >= kTailGuard)) {
    throw std::domain_error("phi_tail: |s| must be >= " + std::to_string(kTailGuard));
  }
  const double p = exponent(family);
  const double value = tail_constant(family) * std::pow(std::abs(s), -(p + 1.0));
  if (s > 0.0) return value;
  return std::visit(overloaded{
                        [&](const ClassicalGaussian&) { return 0.0; },
                        [&](const ExoticTilde& f) { return f.p % 2 == 0 ? -value : value; },
                        [&](const SymmetricF&) { return value; },
                        [&](const AntisymmetricF&) { return -value; },
                        [&](const GelRadial&) -> double {
                          throw std::domain_error("phi_tail: radial profile needs s > 0");
                        },
                    },
                    family);
}

double u_similarity(const SolutionFamily& family, const DiffusionParams& params, double x,
                    double t) {
  params.validate();
  if (!(t > 0.0)) throw std::domain_error("u_similarity: t must be positive");
  const double dt = params.d_coeff * t;
  const double p = exponent(family);
  return params.amplitude * std::pow(dt, -0.5 * (p + 1.0)) * phi(family, x / std::sqrt(dt));
}

double ode_residual(const SolutionFamily& family, double s, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("ode_residual: h must be positive");
  const double p = exponent(family);
  const bool radial = std::holds_alternative<GelRadial>(family);
  // psi_p is odd in s; the odd extension lets the stencil straddle s = 0.
  const auto f = [&](double v) {
    if (radial && v < 0.0) return -phi(family, -v);
    return phi(family, v);
  };
  const double v = f(s);
  const double d1 = fd::richardson_d1(f, s, h);
  const double d2 = fd::richardson_d2(f, s, h);
  if (radial) {
    return 2.0 * s * s * d2 + s * (s * s + 4.0) * d1 + ((p + 1.0) * s * s - 4.0) * v;
  }
  return d2 + 0.5 * s * d1 + 0.5 * (p + 1.0) * v;
}

double first_integral_residual(double s, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("first_integral_residual: h must be positive");
  const auto f = [](double v) { return exotic_phi(0, v); };
  return fd::richardson_d1(f, s, h) + 0.5 * s * f(s) - kFirstIntegralConstant;
}

double similarity_check(const SolutionFamily& family, const DiffusionParams& params, double x,
                        double t, double theta) {
  if (theta == 0.0 || !std::isfinite(theta)) {
    throw std::domain_error("similarity_check: theta must be nonzero");
  }
  const double p = exponent(family);
  const double scaled = signed_power(theta, p + 1.0) *
                        u_similarity(family, params, theta * x, theta * theta * t);
  return scaled - u_similarity(family, params, x, t);
}

std::vector<double> hermite_project(const Profile& initial, double t0, double d_coeff,
                                    int n_max) {
  if (!(t0 > 0.0) || !(d_coeff > 0.0)) {
    throw std::invalid_argument("hermite_project: t0 and d_coeff must be positive");
  }
  if (n_max < 0 || n_max > kMaxProjectionOrder) {
    throw std::invalid_argument("hermite_project: n_max must lie in [0, 30]");
  }
  const auto grid = initial.grid();
  const auto values = initial.values();
  const double half_width = 10.0 * std::sqrt(d_coeff * t0);
  if (grid.empty() || grid.front() > -half_width || grid.back() < half_width) {
    throw std::invalid_argument("hermite_project: grid must cover [-10 sqrt(D t0), 10 sqrt(D t0)]");
  }
  const auto rows = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index cols = n_max + 1;
  if (rows < cols) throw std::invalid_argument("hermite_project: fewer samples than unknowns");

  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  const DiffusionParams unit{d_coeff, 1.0};
  for (Eigen::Index i = 0; i < rows; ++i) {
    b(i) = values[static_cast<std::size_t>(i)];
    for (Eigen::Index p = 0; p < cols; ++p) {
      a(i, p) = u_similarity(ClassicalGaussian{static_cast<int>(p)}, unit,
                             grid[static_cast<std::size_t>(i)], t0);
    }
  }
  const Eigen::VectorXd scale = a.colwise().norm().transpose();
  for (Eigen::Index p = 0; p < cols; ++p) a.col(p) /= scale(p);

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(r).singularValues();
  const double cond = sv(cols - 1) > 0.0 ? sv(0) / sv(cols - 1) : std::numeric_limits<double>::infinity();
  if (cond * cond > kMaxConditionNormal) {
    throw IllConditionedError("hermite_project: normal system too ill-conditioned (cond = " +
                                  std::to_string(cond * cond) + ")",
                              cond * cond);
  }
  const Eigen::VectorXd x = qr.solve(b);
  std::vector<double> coeffs(static_cast<std::size_t>(cols));
  for (Eigen::Index p = 0; p < cols; ++p) coeffs[static_cast<std::size_t>(p)] = x(p) / scale(p);
  return coeffs;
}

Profile reconstruct(std::span<const double> coeffs, double t, double d_coeff,
                    std::span<const double> grid) {
  if (!(t > 0.0)) throw std::domain_error("reconstruct: t must be positive");
  const DiffusionParams unit{d_coeff, 1.0};
  std::vector<double> values(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = 0.0;
    for (std::size_t p = 0; p < coeffs.size(); ++p) {
      if (coeffs[p] != 0.0) {
        v += coeffs[p] * u_similarity(ClassicalGaussian{static_cast<int>(p)}, unit, grid[i], t);
      }
    }
    values[i] = v;
  }
  return Profile(std::vector<double>(grid.begin(), grid.end()), std::move(values), t);
}

}  // namespace simdiff::similarity
