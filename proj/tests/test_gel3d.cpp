#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "simdiff/finite_difference.hpp"
#include "simdiff/gel3d.hpp"
#include "simdiff/similarity1d.hpp"
#include "support/quadrature.hpp"

using namespace simdiff;
using namespace simdiff::gel;
using std::numbers::pi;

namespace {

const double kSqrtPi = std::sqrt(pi);

// psi_1 from its integral representation 3 s int_0^1 v^2 exp(-s^2 v^2 / 4) dv.
double psi1_integral(double s) {
  return 3.0 * s * test::integrate([s](double v) { return v * v * std::exp(-0.25 * s * s * v * v); }, 0.0, 1.0);
}

// Closed form obtained by integrating the representation above.
double psi1_closed(double s) {
  return 6.0 * kSqrtPi / (s * s) * std::erf(0.5 * s) - 6.0 / s * std::exp(-0.25 * s * s);
}

GelParams unit_gel() { return GelParams{}; }

}  // namespace

TEST_CASE("GelParams") {
  const GelParams g{2.0, 0.75, 1.0, 0.01, 1.5};
  CHECK(g.diffusion() == doctest::Approx(1.0));
  CHECK(g.core_volume() == doctest::Approx(4.0 * pi * 1.5 * 1.5 * 1.5 / 3.0));
  CHECK(unit_gel().diffusion() == doctest::Approx(1.0));
  GelParams bad = g;
  bad.strain = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("psi: examples") {
  for (double p : {0.5, 1.0, 2.0, 3.5}) CHECK(psi(p, 0.0) == 0.0);
  CHECK(psi(1.0, 1e-6) / 1e-6 == doctest::Approx(1.0).epsilon(1e-12));
  const double quad = psi1_integral(2.0);
  CHECK(quad == doctest::Approx(1.13683407492295411).epsilon(1e-13));
  CHECK(psi(1.0, 2.0) == doctest::Approx(quad).epsilon(1e-13));
  CHECK(psi(2.0, 3.0) == doctest::Approx(0.570246593979794960).epsilon(1e-13));
  CHECK_THROWS_AS(psi(1.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(psi(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("psi_1: integral representation, closed form and Kummer form agree") {
  for (double s = 0.05; s <= 12.0; s += 0.0977) {
    CAPTURE(s);
    CHECK(psi1_closed(s) == doctest::Approx(psi1_integral(s)).epsilon(1e-10));
    CHECK(psi(1.0, s) == doctest::Approx(psi1_integral(s)).epsilon(1e-12));
  }
  // tail constant 6 sqrt(pi)
  CHECK(psi1_integral(40.0) * 1600.0 == doctest::Approx(6.0 * kSqrtPi).epsilon(1e-12));
  CHECK(similarity::tail_constant(GelRadial{1.0}) == doctest::Approx(6.0 * kSqrtPi).epsilon(1e-14));
}

TEST_CASE("psi1_prime: examples") {
  CHECK(psi1_prime(0.0) == 1.0);
  CHECK(psi1_prime(1e-4) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(psi1_prime(20.0) * 8000.0 / (-12.0 * kSqrtPi)) - 1.0 < 1e-3);
  const double fd = (psi(1.0, 2.0 + 1e-5) - psi(1.0, 2.0 - 1e-5)) / 2e-5;
  CHECK(std::abs(psi1_prime(2.0) - fd) < 1e-8);
  CHECK(psi1_prime(2.0) == doctest::Approx(-0.0331957514086271466).epsilon(1e-12));
  // series branch and closed form meet at the threshold
  CHECK(psi1_prime(std::nextafter(0.05, 0.0)) == doctest::Approx(psi1_prime(0.05)).epsilon(1e-12));
  CHECK_THROWS_AS(psi1_prime(-1.0), std::domain_error);
}

TEST_CASE("psi satisfies the radial scaling ODE") {
  for (double p : {0.5, 1.0, 2.0, 3.5}) {
    double worst = 0.0;
    for (int i = 1; i <= 400; ++i) {
      const double s = 12.0 * i / 400.0;
      worst = std::max(worst, std::abs(similarity::ode_residual(GelRadial{p}, s)) / (1.0 + s * s));
    }
    CAPTURE(p);
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("psi1_prime matches finite differences of psi_1 on [0.1, 12]") {
  const auto f = [](double s) { return psi(1.0, s); };
  for (double s = 0.1; s <= 12.0; s += 0.0503) {
    CAPTURE(s);
    CHECK(std::abs(psi1_prime(s) - fd::richardson_d1(f, s, 1e-3)) < 1e-8);
  }
}

TEST_CASE("density identity psi_1' + 2 psi_1 / s = 3 exp(-s^2/4)") {
  for (double s = 0.001; s <= 12.0; s += 0.0371) {
    CAPTURE(s);
    CHECK(std::abs(psi1_prime(s) + 2.0 * psi(1.0, s) / s - 3.0 * std::exp(-0.25 * s * s)) < 1e-9);
  }
}

TEST_CASE("displacement: examples") {
  const GelParams g = unit_gel();
  // r^2 U constant in t far out
  const double r = 200.0;
  const double a = r * r * displacement(g, 1.0, r, 1.0, 1.0);
  const double b = r * r * displacement(g, 1.0, r, 9.0, 1.0);
  CHECK(b == doctest::Approx(a).epsilon(1e-12));
  // similarity scaling with p = 1
  for (double theta : {0.5, 1.7, 3.0}) {
    const double lhs = theta * theta * displacement(g, 1.0, theta * 2.3, theta * theta * 1.4, 1.0);
    CHECK(std::abs(lhs - displacement(g, 1.0, 2.3, 1.4, 1.0)) < 1e-12);
  }
  // matched far field
  const double amp = matched_amplitude(g);
  CHECK(amp == doctest::Approx(g.strain * g.core_volume() / (24.0 * std::pow(pi, 1.5))));
  for (double t : {1.0, 4.0, 9.0}) {
    const double rr = 10.0 * std::sqrt(g.diffusion() * t);
    const double far = g.strain * g.core_volume() / (4.0 * pi * rr * rr);
    CHECK(displacement(g, 1.0, rr, t, amp) == doctest::Approx(far).epsilon(5e-3));
  }
  CHECK_THROWS_AS(displacement(g, 1.0, 0.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(displacement(g, 1.0, 1.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("density_deviation: examples") {
  const GelParams g = unit_gel();
  const double injected = g.strain * g.core_volume();
  for (double t : {0.5, 2.0, 9.0}) {
    const double dt = g.diffusion() * t;
    CHECK(density_deviation(g, 0.0, t) == doctest::Approx(-injected / std::pow(4.0 * pi * dt, 1.5)));
    const double total = test::integrate(
        [&](double r) { return density_deviation(g, r, t) * 4.0 * pi * r * r; }, 0.0,
        40.0 * std::sqrt(dt), 1e-12);
    CHECK(total == doctest::Approx(-injected).epsilon(1e-10));
    for (double r = 0.0; r < 30.0; r += 0.7) CHECK(density_deviation(g, r, t) <= 0.0);
  }
  // -(d/dr + 2/r) U_1 with the matched amplitude is the Gaussian
  const double amp = matched_amplitude(g);
  for (double t : {1.0, 4.0}) {
    for (double r = 0.05; r < 12.0; r += 0.31) {
      const double dt = g.diffusion() * t;
      const double s = r / std::sqrt(dt);
      const double du_dr = amp / std::pow(dt, 1.5) * psi1_prime(s);
      const double from_u = -(du_dr + 2.0 * displacement(g, 1.0, r, t, amp) / r);
      const double gauss = density_deviation(g, r, t);
      CAPTURE(r);
      CHECK(from_u == doctest::Approx(gauss).epsilon(1e-8));
    }
  }
}

TEST_CASE("density deviation solves the radial density equation") {
  const GelParams g = unit_gel();
  const auto r_rho = [&](double r, double t) { return r * density_deviation(g, r, t); };
  for (double t : {0.5, 1.0, 3.0}) {
    for (double r = 0.3; r < 8.0; r += 0.45) {
      const double res =
                         (fd::richardson_d1([&](double tau) { return r_rho(r, tau); }, t, 1e-3) -
                          g.diffusion() * fd::richardson_d2([&](double x) { return r_rho(x, t); }, r, 1e-3));
      CHECK(std::abs(res) < 1e-6);
    }
  }
}

TEST_CASE("displacement tail persists and matches the injection far field") {
  const GelParams g = unit_gel();
  const double amp = matched_amplitude(g);
  for (double t_max : {4.0, 9.0, 25.0}) {
    const double r = 20.0 * std::sqrt(g.diffusion() * t_max);
    const double a = displacement(g, 1.0, r, t_max / 4.0, amp);
    const double b = displacement(g, 1.0, r, t_max, amp);
    CHECK(std::abs(b / a - 1.0) < 0.01);
  }
  for (double t : {1.0, 9.0, 25.0}) {
    for (double k : {10.0, 15.0, 30.0}) {
      const double r = k * std::sqrt(g.diffusion() * t);
      const double far = g.strain * g.core_volume() / (4.0 * pi * r * r);
      CHECK(std::abs(displacement(g, 1.0, r, t, amp) / far - 1.0) < 0.01);
    }
  }
  // At r = 20 the tail is not yet reached by Dt = 25 (s = 4): r^2 U drifts by 4.6%.
  const double early = 400.0 * displacement(g, 1.0, 20.0, 9.0, amp);
  const double late = 400.0 * displacement(g, 1.0, 20.0, 25.0, amp);
  CHECK(1.0 - late / early == doctest::Approx(0.046).epsilon(0.02));
}

TEST_CASE("injection_ic: examples") {
  const GelParams g{1.0, 0.375, 0.5, 0.02, 2.0};
  const double r0 = g.core_radius;
  const std::vector<double> radii{0.5 * r0, r0, 2.0 * r0};
  const auto field = injection_ic(g, radii);
  CHECK(field.kind() == RadialKind::displacement);
  CHECK(field.time() == 0.0);
  CHECK(field.values()[0] == doctest::Approx(g.strain * r0 / 6.0));
  CHECK(field.values()[1] == doctest::Approx(g.strain * r0 / 3.0));
  CHECK(field.values()[2] == doctest::Approx(g.strain * g.core_volume() / (16.0 * pi * r0 * r0)));
  CHECK(field.values()[2] == doctest::Approx(g.strain * r0 / 12.0));
  const std::vector<double> straddle{r0, std::nextafter(r0, 10.0)};
  const auto across = injection_ic(g, straddle);
  CHECK(across.values()[1] == doctest::Approx(across.values()[0]).epsilon(1e-14));
}

TEST_CASE("incompressibility_residual") {
  const GelParams g = unit_gel();
  const auto radii = linspace(0.01, 10.0, 1000);
  CHECK(incompressibility_residual(injection_ic(g, radii), g) < 1e-6);

  const double c = 0.3;
  std::vector<double> dilatation(radii.size()), inverse_square(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    dilatation[i] = c * radii[i];
    inverse_square[i] = c / (radii[i] * radii[i]);
  }
  const double res = incompressibility_residual(RadialField(radii, dilatation, 0.0, RadialKind::displacement), g);
  CHECK(res == doctest::Approx(3.0 * c / g.strain).epsilon(1e-4));
  CHECK(incompressibility_residual(RadialField(radii, inverse_square, 0.0, RadialKind::displacement), g) < 1e-10);

  const auto sparse = linspace(0.1, 1.5, 20);
  CHECK_THROWS_AS(incompressibility_residual(injection_ic(g, sparse), g), std::invalid_argument);
  const RadialField density(radii, dilatation, 0.0, RadialKind::density);
  CHECK_THROWS_AS(incompressibility_residual(density, g), std::invalid_argument);
}

TEST_CASE("density_from_displacement and solvent_volume on the similarity solution") {
  const GelParams g = unit_gel();
  const double amp = matched_amplitude(g);
  const auto radii = linspace(0.02, 60.0, 3000);
  for (double t : {4.0, 9.0}) {
    std::vector<double> u(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) u[i] = displacement(g, 1.0, radii[i], t, amp);
    const auto rho = density_from_displacement(RadialField(radii, u, t, RadialKind::displacement));
    for (std::size_t i = 0; i < radii.size(); i += 97) {
      CHECK(std::abs(rho.values()[i] - density_deviation(g, radii[i], t)) <
            1e-4 * std::abs(density_deviation(g, 0.0, t)));
    }
    CHECK(solvent_volume(rho) == doctest::Approx(g.strain * g.core_volume()).epsilon(1e-3));
  }
}
