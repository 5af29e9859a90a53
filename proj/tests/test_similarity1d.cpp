#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "simdiff/errors.hpp"
#include "simdiff/similarity1d.hpp"
#include "simdiff/specfun.hpp"
#include "support/quadrature.hpp"

using namespace simdiff;
using namespace simdiff::similarity;
using std::numbers::pi;

namespace {

const double kSqrtPi = std::sqrt(pi);

// exp(-z) 1F1(a; b; z) from the plain series in extended precision (z >= 0).
double scaled_kummer_reference(long double a, long double b, long double z) {
  long double term = 1.0L, sum = 1.0L;
  for (int n = 0; n < 6000; ++n) {
    term *= (a + n) * z / ((b + n) * (n + 1));
    sum += term;
    if (n > z + 20 && std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  return static_cast<double>(std::exp(-z) * sum);
}

double symmetric_reference(double p, double s) {
  return scaled_kummer_reference(-0.5L * p, 0.5L, 0.25L * s * s);
}

double antisymmetric_reference(double p, double s) {
  return s * scaled_kummer_reference(0.5L * (1.0L - p), 1.5L, 0.25L * s * s);
}

// phi~_0 straight from its defining integral (Gaussian folded into the integrand).
double exotic0_quadrature(double s) {
  return test::integrate([s](double w) { return std::exp(0.25 * (w * w - s * s)); }, 0.0, s) /
         std::sqrt(4.0 * pi);
}

std::vector<SolutionFamily> ode_families() {
  std::vector<SolutionFamily> out;
  for (int p = 0; p <= 5; ++p) {
    out.emplace_back(ClassicalGaussian{p});
    out.emplace_back(ExoticTilde{p});
  }
  for (double p : {0.5, 1.0, 1.3, 2.0, 2.7}) {
    out.emplace_back(SymmetricF{p});
    out.emplace_back(AntisymmetricF{p});
  }
  return out;
}

}  // namespace

TEST_CASE("phi: examples") {
  CHECK(phi(ClassicalGaussian{0}, 0.0) == doctest::Approx(0.2820947918).epsilon(1e-10));
  CHECK(phi(ExoticTilde{0}, 0.0) == 0.0);
  for (double p : {0.5, 1.3, 2.7}) {
    CHECK(phi(SymmetricF{p}, 0.0) == 1.0);
    CHECK(phi(AntisymmetricF{p}, 0.0) == 0.0);
  }
  const double quad = exotic0_quadrature(2.0);
  CHECK(quad == doctest::Approx(0.30357885292069686).epsilon(1e-12));
  CHECK(phi(ExoticTilde{0}, 2.0) == doctest::Approx(quad).epsilon(1e-12));
  CHECK_THROWS_AS(phi(ClassicalGaussian{-1}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(phi(SymmetricF{-0.5}, 0.0), std::invalid_argument);
}

TEST_CASE("exotic p=0: Dawson form matches the defining integral on [0, 6]") {
  for (double s = 0.0; s <= 6.0; s += 0.125) {
    CAPTURE(s);
    CHECK(phi(ExoticTilde{0}, s) == doctest::Approx(exotic0_quadrature(s)).epsilon(1e-12));
  }
}

TEST_CASE("exotic p>0: closed-form derivatives match frozen high-precision values") {
  // Derivatives of the defining integral at s = 1.7, 30-digit reference.
  const double expected[] = {0.303499250942618094, 0.0241204284726527632,
                             -0.172251989673063896, 0.122293762749451548};
  for (int p = 0; p < 4; ++p) {
    CAPTURE(p);
    CHECK(phi(ExoticTilde{p}, 1.7) == doctest::Approx(expected[p]).epsilon(1e-13));
  }
}

TEST_CASE("exotic: closed form and asymptotic branch agree across the switch") {
  for (int p = 1; p <= 5; ++p) {
    const double below = phi(ExoticTilde{p}, std::nextafter(12.0, 0.0));
    const double above = phi(ExoticTilde{p}, 12.0);
    CAPTURE(p);
    CHECK(above == doctest::Approx(below).epsilon(1e-9));
  }
}

TEST_CASE("symmetric and antisymmetric: frozen values and extended-precision series") {
  CHECK(phi(SymmetricF{1.3}, 3.0) == doctest::Approx(-0.334774653257473208).epsilon(1e-13));
  CHECK(phi(AntisymmetricF{2.7}, 4.0) == doctest::Approx(-0.128842334371944150).epsilon(1e-13));
  for (double p : {0.5, 1.3, 2.0, 2.7}) {
    for (double s : {0.5, 3.0, 9.0, 15.0, 16.0, 25.0, 40.0}) {
      CAPTURE(p);
      CAPTURE(s);
      CHECK(phi(SymmetricF{p}, s) == doctest::Approx(symmetric_reference(p, s)).epsilon(1e-11));
      CHECK(phi(AntisymmetricF{p}, s) ==
            doctest::Approx(antisymmetric_reference(p, s)).epsilon(1e-11));
    }
  }
  // far beyond where an unscaled 1F1 would overflow
  CHECK(std::isfinite(phi(SymmetricF{1.3}, 80.0)));
  CHECK(phi(SymmetricF{1.3}, 80.0) == doctest::Approx(phi_tail(SymmetricF{1.3}, 80.0)).epsilon(1e-3));
}

TEST_CASE("phi_tail: examples") {
  for (double s : {100.0, 1e3, 1e5}) {
    CHECK(s * phi_tail(ExoticTilde{0}, s) == doctest::Approx(1.0 / kSqrtPi).epsilon(1e-14));
  }
  CHECK(1.0 / kSqrtPi == doctest::Approx(0.5641895835).epsilon(1e-10));
  CHECK(phi_tail(ClassicalGaussian{3}, 10.0) == 0.0);
  // p-fold derivative of 1/(sqrt(pi) s) carries p!, so p = 2 gives 2/(sqrt(pi) s^3)
  // (a (p-1)! prefactor would give half this, 5.6419e-4).
  CHECK(phi_tail(ExoticTilde{2}, 10.0) == doctest::Approx(2.0 / (kSqrtPi * 1000.0)).epsilon(1e-14));
  CHECK(phi_tail(ExoticTilde{2}, 10.0) / 5.6419e-4 == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(phi(ExoticTilde{2}, 100.0) / phi_tail(ExoticTilde{2}, 100.0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(phi_tail(ExoticTilde{1}, -10.0) == doctest::Approx(-1.0 / (kSqrtPi * 100.0)).epsilon(1e-14));
  CHECK_THROWS_AS(phi_tail(ExoticTilde{0}, 4.99), std::domain_error);
  CHECK_THROWS_AS(phi_tail(SymmetricF{0.5}, -1.0), std::domain_error);
}

TEST_CASE("tail constants agree with a fit of phi s^{1+p} on [20, 40]") {
  // v(s) = phi(s) s^{1+p} = C (1 + c1/s^2 + c2/s^4 + ...): two Richardson
  // levels in 1/s^2 from s = 20, 20 sqrt(2), 40.
  const auto extrapolate = [](auto&& f, double p) {
    const auto v = [&](double s) { return f(s) * std::pow(s, 1.0 + p); };
    const double v1 = v(20.0), v2 = v(20.0 * std::sqrt(2.0)), v3 = v(40.0);
    const double r12 = 2.0 * v2 - v1;
    const double r23 = 2.0 * v3 - v2;
    return (4.0 * r23 - r12) / 3.0;
  };
  for (double p : {0.0, 0.5, 1.3, 2.7, 3.2}) {
    const double fit_s = extrapolate([p](double s) { return symmetric_reference(p, s); }, p);
    const double fit_a = extrapolate([p](double s) { return antisymmetric_reference(p, s); }, p);
    CAPTURE(p);
    CHECK(tail_constant(SymmetricF{p}) == doctest::Approx(fit_s).epsilon(2e-4));
    CHECK(tail_constant(AntisymmetricF{p}) == doctest::Approx(fit_a).epsilon(2e-4));
  }
  for (int p = 0; p <= 3; ++p) {
    const double fit = extrapolate([p](double s) { return phi(ExoticTilde{p}, s); }, p);
    CHECK(tail_constant(ExoticTilde{p}) == doctest::Approx(fit).epsilon(2e-4));
  }
  // exotic p = 0 against the raw integral, no shared code at all
  const double fit0 = extrapolate(exotic0_quadrature, 0.0);
  CHECK(tail_constant(ExoticTilde{0}) == doctest::Approx(fit0).epsilon(2e-4));
}

TEST_CASE("u_similarity: examples") {
  const DiffusionParams unit{1.0, 1.0};
  CHECK(u_similarity(ClassicalGaussian{0}, unit, 0.0, 1.0) ==
        doctest::Approx(1.0 / std::sqrt(4.0 * pi)).epsilon(1e-15));
  CHECK(u_similarity(ClassicalGaussian{0}, unit, 0.0, 4.0) ==
        doctest::Approx(1.0 / std::sqrt(16.0 * pi)).epsilon(1e-15));
  CHECK(u_similarity(ClassicalGaussian{0}, {2.0, 1.0}, 0.0, 2.0) ==
        doctest::Approx(1.0 / std::sqrt(16.0 * pi)).epsilon(1e-15));
  // time-independent tail of the exotic p = 0 solution
  for (double dt : {1.0, 4.0, 9.0}) {
    CHECK(u_similarity(ExoticTilde{0}, unit, 1e4, dt) * 1e4 == doctest::Approx(1.0 / kSqrtPi).epsilon(1e-6));
  }
  CHECK_THROWS_AS(u_similarity(ClassicalGaussian{0}, unit, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(u_similarity(ClassicalGaussian{0}, {0.0, 1.0}, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("ode_residual: examples") {
  CHECK(std::abs(ode_residual(ClassicalGaussian{0}, 1.7)) < 1e-8);
  CHECK(std::abs(ode_residual(ExoticTilde{0}, 3.1)) < 1e-8);
  CHECK(std::abs(ode_residual(SymmetricF{1.3}, 2.4)) < 1e-8);
  CHECK_THROWS_AS(ode_residual(ClassicalGaussian{0}, 1.0, 0.0), std::invalid_argument);
  // a wrong exponent is detected
  CHECK(std::abs(ode_residual(ClassicalGaussian{0}, 0.0) -
                 0.5 * phi(ClassicalGaussian{0}, 0.0) * 0.0) < 1e-8);
}

TEST_CASE("ode_residual is below 1e-8 on 200 points of [-10, 10] for every family") {
  for (const auto& family : ode_families()) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double s = -10.0 + 20.0 * i / 199.0;
      worst = std::max(worst, std::abs(ode_residual(family, s)));
    }
    CAPTURE(family_name(family));
    CAPTURE(exponent(family));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("first_integral_residual") {
  CHECK(std::abs(first_integral_residual(0.0)) < 1e-12);
  CHECK(std::abs(first_integral_residual(5.0)) < 1e-10);
  CHECK(std::abs(first_integral_residual(-5.0)) < 1e-10);
  for (double s = -10.0; s <= 10.0; s += 0.05) {
    CAPTURE(s);
    CHECK(std::abs(first_integral_residual(s)) < 1e-10);
  }
}

TEST_CASE("similarity_check: examples") {
  const DiffusionParams unit{1.0, 1.0};
  CHECK(similarity_check(SymmetricF{1.3}, unit, 0.7, 2.0, 1.0) == 0.0);
  CHECK(similarity_check(ExoticTilde{2}, unit, -3.0, 5.0, 1.0) == 0.0);
  CHECK(std::abs(similarity_check(ClassicalGaussian{0}, unit, 1.0, 1.0, 2.0)) < 1e-12);
  CHECK(std::abs(similarity_check(ExoticTilde{1}, unit, 3.0, 2.0, 0.5)) < 1e-12);
  CHECK_THROWS_AS(similarity_check(ClassicalGaussian{0}, unit, 1.0, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(similarity_check(SymmetricF{0.5}, unit, 1.0, 1.0, -2.0), std::domain_error);
  // theta < 0 flips the sign of families with parity (-1)^p
  const double u = u_similarity(ClassicalGaussian{0}, unit, 1.0, 1.0);
  CHECK(similarity_check(ClassicalGaussian{0}, unit, 1.0, 1.0, -1.0) == doctest::Approx(-2.0 * u));
}

TEST_CASE("similarity law holds for random (x, t, theta)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dx(-6.0, 6.0), dlogt(-1.0, 1.5), dlogtheta(-1.0, 1.0);
  const std::vector<SolutionFamily> families = {ClassicalGaussian{0}, ClassicalGaussian{3},
                                                ExoticTilde{0},       ExoticTilde{2},
                                                SymmetricF{1.3},      AntisymmetricF{2.7}};
  const DiffusionParams params{1.7, 0.8};
  for (const auto& family : families) {
    for (int i = 0; i < 1000; ++i) {
      const double x = dx(rng);
      const double t = std::pow(10.0, dlogt(rng));
      const double theta = std::pow(10.0, dlogtheta(rng));
      const double u = u_similarity(family, params, x, t);
      REQUIRE(std::abs(similarity_check(family, params, x, t, theta)) < 1e-12 * (1.0 + std::abs(u)));
    }
  }
  // exotic parity (-1)^{p+1} makes negative theta admissible
  for (int p = 0; p <= 3; ++p) {
    for (int i = 0; i < 200; ++i) {
      const double x = dx(rng), t = std::pow(10.0, dlogt(rng));
      const double theta = -std::pow(10.0, dlogtheta(rng));
      const double u = u_similarity(ExoticTilde{p}, params, x, t);
      REQUIRE(std::abs(similarity_check(ExoticTilde{p}, params, x, t, theta)) <
              1e-12 * (1.0 + std::abs(u)));
    }
  }
}

TEST_CASE("parity of every family") {
  for (double s = 0.1; s <= 30.0; s += 0.37) {
    for (int p = 0; p <= 5; ++p) {
      const double sign_classical = p % 2 == 0 ? 1.0 : -1.0;
      REQUIRE(phi(ClassicalGaussian{p}, -s) == sign_classical * phi(ClassicalGaussian{p}, s));
      REQUIRE(phi(ExoticTilde{p}, -s) == -sign_classical * phi(ExoticTilde{p}, s));
    }
    for (double p : {0.5, 1.3, 2.7}) {
      REQUIRE(phi(SymmetricF{p}, -s) == phi(SymmetricF{p}, s));
      REQUIRE(phi(AntisymmetricF{p}, -s) == -phi(AntisymmetricF{p}, s));
    }
  }
}

TEST_CASE("exotic tails converge to the power law") {
  for (int p = 0; p <= 3; ++p) {
    const auto normalized_error = [p](double s) {
      const double lead = tail_constant(ExoticTilde{p}) * std::pow(s, -(p + 1.0));
      return std::abs(phi(ExoticTilde{p}, s) / lead - 1.0);
    };
    CAPTURE(p);
    CHECK(normalized_error(30.0) < 0.05);
    CHECK(normalized_error(-30.0 * -1.0) < 0.05);
    double previous = normalized_error(5.0);
    for (double s : {10.0, 15.0, 20.0, 30.0, 45.0, 60.0}) {
      const double e = normalized_error(s);
      CHECK(e < previous);
      previous = e;
    }
    // negative side mirrors
    const double neg = phi(ExoticTilde{p}, -30.0) * kSqrtPi * std::pow(-30.0, p + 1) /
                       ((p % 2 == 0 ? 1.0 : -1.0) * std::tgamma(p + 1.0));
    CHECK(std::abs(neg - 1.0) < 0.05);
  }
}

TEST_CASE("tail constants vanish at the integer limits") {
  for (int n = 0; n <= 4; ++n) {
    for (double side : {-1.0, 1.0}) {
      if (n == 0 && side < 0.0) continue;
      const double near = n + side * 1e-3;
      const double far = n + side * 0.5;
      const auto constant = [n](double p) {
        return n % 2 == 0 ? tail_constant(SymmetricF{p}) : tail_constant(AntisymmetricF{p});
      };
      CAPTURE(n);
      CAPTURE(side);
      CHECK(std::abs(constant(near)) < 1e-2 * std::abs(constant(far)));
    }
    // at the integer itself the series terminates: Gaussian decay, no tail
    const SolutionFamily exact = n % 2 == 0 ? SolutionFamily{SymmetricF{double(n)}}
                                            : SolutionFamily{AntisymmetricF{double(n)}};
    CHECK(tail_constant(exact) == 0.0);
    CHECK(std::abs(phi(exact, 30.0)) < 1e-90);
  }
}

TEST_CASE("antisymmetric p=0 equals 2 sqrt(pi) times exotic p=0") {
  for (double s = -10.0; s <= 10.0; s += 0.05) {
    const double quad = s >= 0.0 ? exotic0_quadrature(s) : -exotic0_quadrature(-s);
    CAPTURE(s);
    REQUIRE(std::abs(phi(ExoticTilde{0}, s) - quad) < 1e-12);
    REQUIRE(std::abs(phi(AntisymmetricF{0.0}, s) - 2.0 * kSqrtPi * phi(ExoticTilde{0}, s)) < 1e-10);
  }
}

TEST_CASE("mass of u_0 is conserved") {
  for (double dt : {0.25, 1.0, 4.0, 9.0}) {
    const double half = 40.0 * std::sqrt(dt);
    const auto x = linspace(-half, half, 4001);
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = u_similarity(ClassicalGaussian{0}, {1.0, 1.0}, x[i], dt);
    CHECK(test::trapezoid(x, u) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("hermite_project: examples") {
  const double t0 = 1.0, d = 1.0;
  const auto x = linspace(-20.0, 20.0, 2001);
  const auto sample = [&](auto&& f) {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = f(x[i]);
    return Profile(x, v, 0.0);
  };
  const DiffusionParams unit{d, 1.0};

  const auto basis = sample([&](double xi) { return u_similarity(ClassicalGaussian{0}, unit, xi, t0); });
  const auto c1 = hermite_project(basis, t0, d, 6);
  CHECK(c1[0] == doctest::Approx(1.0).epsilon(1e-8));
  for (std::size_t p = 1; p < c1.size(); ++p) CHECK(std::abs(c1[p]) < 1e-8);

  const auto mix = sample([&](double xi) {
    return 2.0 * u_similarity(ClassicalGaussian{0}, unit, xi, t0) +
           3.0 * u_similarity(ClassicalGaussian{2}, unit, xi, t0);
  });
  const auto c2 = hermite_project(mix, t0, d, 8);
  const double want[] = {2, 0, 3, 0, 0, 0, 0, 0, 0};
  for (std::size_t p = 0; p < c2.size(); ++p) {
    CAPTURE(p);
    CHECK(std::abs(c2[p] - want[p]) < 1e-8);
  }

  // shifted Gaussian: the least-squares residual shrinks as n_max grows
  const auto shifted = sample([&](double xi) { return phi(ClassicalGaussian{0}, xi - 1.0); });
  double previous = 1e300;
  for (int n : {0, 2, 4, 8, 12, 16}) {
    const auto coeffs = hermite_project(shifted, t0, d, n);
    const auto back = reconstruct(coeffs, t0, d, x);
    std::vector<double> err2(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = back.values()[i] - shifted.values()[i];
      err2[i] = e * e;
    }
    const double err = std::sqrt(test::trapezoid(x, err2));
    CAPTURE(n);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-6);
}

TEST_CASE("hermite_project: errors") {
  const auto narrow = linspace(-5.0, 5.0, 101);
  const Profile p(narrow, std::vector<double>(narrow.size(), 0.0), 0.0);
  CHECK_THROWS_AS(hermite_project(p, 1.0, 1.0, 3), std::invalid_argument);
  const auto x = linspace(-20.0, 20.0, 2001);
  const Profile wide(x, std::vector<double>(x.size(), 0.0), 0.0);
  CHECK_THROWS_AS(hermite_project(wide, 1.0, 1.0, 31), std::invalid_argument);
  CHECK_THROWS_AS(hermite_project(wide, 1.0, 1.0, 30), IllConditionedError);
  CHECK_NOTHROW(hermite_project(wide, 1.0, 1.0, 20));
}

TEST_CASE("reconstruct: examples") {
  const auto x = linspace(-15.0, 15.0, 1501);
  const DiffusionParams unit{1.0, 1.0};
  const std::vector<double> one{1.0};
  for (double t : {0.5, 2.0}) {
    const auto prof = reconstruct(one, t, 1.0, x);
    for (std::size_t i = 0; i < x.size(); i += 50) {
      CHECK(prof.values()[i] == u_similarity(ClassicalGaussian{0}, unit, x[i], t));
    }
  }
  const std::vector<double> dipole{0.0, 1.0};
  const auto prof = reconstruct(dipole, 1.0, 1.0, x);
  CHECK(std::abs(test::trapezoid(x, prof.values())) < 1e-14);
}

TEST_CASE("projection round trip recovers finite superpositions") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  const auto x = linspace(-25.0, 25.0, 2501);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> coeffs(11);
    for (auto& c : coeffs) c = amp(rng);
    const auto truth = reconstruct(coeffs, 1.5, 1.0, x);
    const Profile initial(x, std::vector<double>(truth.values().begin(), truth.values().end()), 0.0);
    const auto fitted = hermite_project(initial, 1.5, 1.0, 10);
    const auto back = reconstruct(fitted, 1.5, 1.0, x);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = back.values()[i] - truth.values()[i];
      num += e * e;
      den += truth.values()[i] * truth.values()[i];
    }
    CHECK(std::sqrt(num / den) < 1e-8);
  }
}
