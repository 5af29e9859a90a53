#include "simdiff/gel3d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "simdiff/specfun.hpp"

namespace simdiff::gel {

namespace {

using std::numbers::pi;

constexpr double kSeriesBelow = 0.05;

// Derivative at x[at] of the parabola through three samples.
double lagrange_d1(const double* x, const double* f, int at) {
  const double x0 = x[0], x1 = x[1], x2 = x[2];
  const double xa = x[at];
  const double c0 = ((xa - x1) + (xa - x2)) / ((x0 - x1) * (x0 - x2));
  const double c1 = ((xa - x0) + (xa - x2)) / ((x1 - x0) * (x1 - x2));
  const double c2 = ((xa - x0) + (xa - x1)) / ((x2 - x0) * (x2 - x1));
  return c0 * f[0] + c1 * f[1] + c2 * f[2];
}

// d/dr of f at every node: centered stencil inside, one-sided at the ends.
std::vector<double> gradient(std::span<const double> r, std::span<const double> f) {
  const std::size_t n = r.size();
  if (n < 3) throw std::invalid_argument("gradient: need at least three points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
    out[i] = lagrange_d1(r.data() + lo, f.data() + lo, static_cast<int>(i - lo));
  }
  return out;
}

}  // namespace

void GelParams::validate() const {
  for (double v : {friction, shear_mod, bulk_mod, strain, core_radius}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("GelParams: f, mu, K, eps and R0 must all be positive");
    }
  }
}

double GelParams::diffusion() const { return (bulk_mod + 4.0 * shear_mod / 3.0) / friction; }

double GelParams::core_volume() const { return 4.0 * pi * core_radius * core_radius * core_radius / 3.0; }

double psi(double p, double s) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("psi: p must be >= 0");
  if (!(s >= 0.0)) throw std::domain_error("psi: s must be non-negative");
  if (s == 0.0) return 0.0;
  return s * specfun::kummer_1f1_scaled(1.5 - 0.5 * p, 2.5, 0.25 * s * s);
}

double psi1_prime(double s) {
  if (!(s >= 0.0)) throw std::domain_error("psi1_prime: s must be non-negative");
  if (s < kSeriesBelow) {
    // sum_n 3 (-1)^n (2n+1) / (n! (2n+3) 4^n) s^{2n}
    const double s2 = s * s;
    return 1.0 + s2 * (-9.0 / 20.0 + s2 * (15.0 / 224.0 + s2 * (-7.0 / 1152.0)));
  }
  const double sqrt_pi = std::sqrt(pi);
  return -12.0 * sqrt_pi / (s * s * s) * specfun::erf(0.5 * s) +
         3.0 * (1.0 + 4.0 / (s * s)) * std::exp(-0.25 * s * s);
}

double matched_amplitude(const GelParams& params) {
  params.validate();
  return params.strain * params.core_volume() / (24.0 * std::pow(pi, 1.5));
}

double displacement(const GelParams& params, double p, double r, double t, double amplitude) {
  params.validate();
  if (!(r > 0.0)) throw std::domain_error("displacement: r must be positive");
  if (!(t > 0.0)) throw std::domain_error("displacement: t must be positive");
  const double dt = params.diffusion() * t;
  return amplitude * std::pow(dt, -0.5 * (p + 1.0)) * psi(p, r / std::sqrt(dt));
}

double density_deviation(const GelParams& params, double r, double t) {
  params.validate();
  if (!(t > 0.0)) throw std::domain_error("density_deviation: t must be positive");
  const double dt = params.diffusion() * t;
  return -params.strain * params.core_volume() * std::exp(-r * r / (4.0 * dt)) /
         std::pow(4.0 * pi * dt, 1.5);
}

RadialField injection_ic(const GelParams& params, std::span<const double> radii) {
  params.validate();
  const double eps = params.strain;
  const double r0 = params.core_radius;
  const double injected = eps * params.core_volume();
  std::vector<double> values(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    values[i] = r <= r0 ? eps * r / 3.0 : injected / (4.0 * pi * r * r);
  }
  return RadialField(std::vector<double>(radii.begin(), radii.end()), std::move(values), 0.0,
                     RadialKind::displacement);
}

double incompressibility_residual(const RadialField& field, const GelParams& params) {
  params.validate();
  if (field.kind() != RadialKind::displacement) {
    throw std::invalid_argument("incompressibility_residual: needs a displacement field");
  }
  const auto r = field.radii();
  const auto u = field.values();
  const double r0 = params.core_radius;
  const auto beyond = std::count_if(r.begin(), r.end(), [&](double v) { return v > r0; });
  if (beyond < 10) {
    throw std::invalid_argument("incompressibility_residual: fewer than 10 grid points beyond R0");
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    if (r[i - 1] <= r0 || r[i] <= 1.05 * r0) continue;
    const double f_lo = r[i - 1] * r[i - 1] * u[i - 1];
    const double f_hi = r[i + 1] * r[i + 1] * u[i + 1];
    const double div = (f_hi - f_lo) / (r[i + 1] - r[i - 1]) / (r[i] * r[i]);
    worst = std::max(worst, std::abs(div));
  }
  return worst / params.strain;
}

RadialField density_from_displacement(const RadialField& field) {
  if (field.kind() != RadialKind::displacement) {
    throw std::invalid_argument("density_from_displacement: needs a displacement field");
  }
  const auto r = field.radii();
  const auto u = field.values();
  // U is nearly linear at small r, so differentiate U rather than r^2 U.
  std::vector<double> rho = gradient(r, u);
  for (std::size_t i = 0; i < r.size(); ++i) rho[i] = -(rho[i] + 2.0 * u[i] / r[i]);
  return RadialField(std::vector<double>(r.begin(), r.end()), std::move(rho), field.time(),
                     RadialKind::density);
}

double solvent_volume(const RadialField& density) {
  if (density.kind() != RadialKind::density) {
    throw std::invalid_argument("solvent_volume: needs a density field");
  }
  const auto r = density.radii();
  const auto d = density.values();
  if (r.empty()) return 0.0;
  double total = -d[0] * 4.0 * pi * r[0] * r[0] * r[0] / 3.0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double a = -d[i - 1] * r[i - 1] * r[i - 1];
    const double b = -d[i] * r[i] * r[i];
    total += 4.0 * pi * 0.5 * (a + b) * (r[i] - r[i - 1]);
  }
  return total;
}

}  // namespace simdiff::gel
