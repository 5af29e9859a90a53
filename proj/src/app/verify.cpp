#include "simdiff/app/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "simdiff/app/gel_sim.hpp"
#include "simdiff/finite_difference.hpp"
#include "simdiff/gel3d.hpp"
#include "simdiff/oracle.hpp"
#include "simdiff/similarity1d.hpp"

namespace simdiff::app {

namespace {

using similarity::DiffusionParams;

struct Outcome {
  double residual;
  double tolerance;
};

struct Check {
  std::string name;
  std::string statement;
  std::function<Outcome(const VerifyOptions&)> run;
};

std::vector<double> span_points(double lo, double hi, int n) { return linspace(lo, hi, n); }

// phi'' + (s/2) phi' + (p+1)/2 phi for any callable profile.
template <class F>
double scaling_residual(const F& f, double p, double s, double h = 2e-3) {
  return fd::richardson_d2(f, s, h) + 0.5 * s * fd::richardson_d1(f, s, h) + 0.5 * (p + 1.0) * f(s);
}

Outcome ode_suite(const std::vector<SolutionFamily>& families, double bias) {
  double worst = 0.0;
  for (const auto& fam : families) {
    const bool biased = bias != 0.0 && std::holds_alternative<ExoticTilde>(fam) &&
                        std::get<ExoticTilde>(fam).p == 0;
    const auto f = [&](double s) { return similarity::phi(fam, s) + (biased ? bias : 0.0); };
    for (double s : span_points(-10.0, 10.0, 200)) {
      worst = std::max(worst, std::abs(scaling_residual(f, exponent(fam), s)));
    }
  }
  return {worst, 1e-8};
}

double l_inf_relative(std::span<const double> x, std::span<const double> got,
                      const std::function<double(double)>& exact, double window) {
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > window) continue;
    const double e = exact(x[i]);
    err = std::max(err, std::abs(got[i] - e));
    scale = std::max(scale, std::abs(e));
  }
  return err / scale;
}

Outcome oracle_1d(const SolutionFamily& fam) {
  double worst = 0.0;
  for (double t_end : {4.0, 9.0}) {
    const auto grid = oracle::default_grid(1.0, t_end);
    const auto x = grid.points();
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = similarity::u_similarity(fam, {}, x[i], 1.0);
    const auto bc = [&](double xx, double t) { return similarity::u_similarity(fam, {}, xx, t); };
    const Profile out = oracle::evolve_1d(Profile(x, u, 1.0),
                                          {1.0, 1.0, t_end, oracle::default_dt(1.0, grid.spacing())}, bc);
    worst = std::max(worst, l_inf_relative(x, out.values(), [&](double xx) { return bc(xx, t_end); }, 10.0));
  }
  return {worst, 1e-3};
}

Outcome oracle_radial() {
  const SolutionFamily fam = GelRadial{1.0};
  double worst = 0.0;
  for (double t_end : {4.0, 9.0}) {
    const double dr = 0.02;
    const auto n = static_cast<std::size_t>(std::lround(20.0 * std::sqrt(t_end) / dr));
    const auto r = linspace(dr, dr * static_cast<double>(n), n);
    std::vector<double> u(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) u[i] = similarity::u_similarity(fam, {}, r[i], 1.0);
    const auto bc = [&](double rr, double t) { return similarity::u_similarity(fam, {}, rr, t); };
    const RadialField out = oracle::evolve_radial(RadialField(r, u, 1.0, RadialKind::displacement),
                                                  {1.0, 1.0, t_end, oracle::default_dt(1.0, dr)}, bc);
    worst = std::max(worst, l_inf_relative(r, out.values(), [&](double rr) { return bc(rr, t_end); }, 10.0));
  }
  return {worst, 1e-3};
}

// |error(dx) / error(dx/2) - 4| over one decade of dx, dt proportional to dx.
Outcome oracle_convergence() {
  const SolutionFamily fam = ClassicalGaussian{0};
  std::vector<double> errors;
  for (double dx : {0.2, 0.1, 0.05, 0.025, 0.02}) {
    const auto n = static_cast<std::size_t>(std::lround(40.0 / dx)) + 1;
    const auto x = linspace(-20.0, 20.0, n);
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = similarity::u_similarity(fam, {}, x[i], 1.0);
    const auto bc = [&](double xx, double t) { return similarity::u_similarity(fam, {}, xx, t); };
    const Profile out = oracle::evolve_1d(Profile(x, u, 1.0), {1.0, 1.0, 2.0, 0.5 * dx}, bc);
    errors.push_back(l_inf_relative(x, out.values(), [&](double xx) { return bc(xx, 2.0); }, 10.0));
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < errors.size(); ++i) worst = std::max(worst, std::abs(errors[i - 1] / errors[i] - 4.0));
  return {worst, 0.5};
}

// The three gel-relaxation records share one run.
const GelSimResult& shared_gel_run() {
  static const GelSimResult result = run_gel_sim(GelSimConfig{});
  return result;
}

std::vector<Check> all_checks() {
  std::vector<Check> c;
  c.push_back({"ode_residual_classical", "Gaussian-derivative profiles solve the scaling ODE, p = 0..5",
               [](const VerifyOptions&) {
                 std::vector<SolutionFamily> f;
                 for (int p = 0; p <= 5; ++p) f.push_back(ClassicalGaussian{p});
                 return ode_suite(f, 0.0);
               }});
  c.push_back({"ode_residual_exotic", "Exotic profiles solve the scaling ODE, p = 0..5",
               [](const VerifyOptions& o) {
                 std::vector<SolutionFamily> f;
                 for (int p = 0; p <= 5; ++p) f.push_back(ExoticTilde{p});
                 return ode_suite(f, o.perturb);
               }});
  c.push_back({"ode_residual_symmetric", "Even Kummer profiles solve the scaling ODE, p in {0.5, 1, 1.3, 2, 2.7}",
               [](const VerifyOptions&) {
                 std::vector<SolutionFamily> f;
                 for (double p : {0.5, 1.0, 1.3, 2.0, 2.7}) f.push_back(SymmetricF{p});
                 return ode_suite(f, 0.0);
               }});
  c.push_back({"ode_residual_antisymmetric", "Odd Kummer profiles solve the scaling ODE, p in {0.5, 1, 1.3, 2, 2.7}",
               [](const VerifyOptions&) {
                 std::vector<SolutionFamily> f;
                 for (double p : {0.5, 1.0, 1.3, 2.0, 2.7}) f.push_back(AntisymmetricF{p});
                 return ode_suite(f, 0.0);
               }});
  c.push_back({"ode_residual_gel", "Radial gel profiles solve the radial scaling ODE on (0, 12], residual / (1 + s^2)",
               [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (double p : {0.5, 1.0, 2.0, 3.5}) {
                   for (int i = 1; i <= 400; ++i) {
                     const double s = 12.0 * i / 400.0;
                     worst = std::max(worst, std::abs(similarity::ode_residual(GelRadial{p}, s)) / (1.0 + s * s));
                   }
                 }
                 return Outcome{worst, 1e-7};
               }});
  c.push_back({"first_integral", "Exotic p = 0 satisfies (d/ds + s/2) phi = (4 pi)^(-1/2) on [-10, 10]",
               [](const VerifyOptions& o) {
                 double worst = 0.0;
                 const auto f = [&](double s) { return similarity::phi(ExoticTilde{0}, s) + o.perturb; };
                 for (double s : span_points(-10.0, 10.0, 401)) {
                   worst = std::max(worst, std::abs(fd::richardson_d1(f, s, 1e-3) + 0.5 * s * f(s) -
                                                    similarity::kFirstIntegralConstant));
                 }
                 return Outcome{worst, 1e-10};
               }});
  c.push_back({"similarity_law", "theta^(p+1) u(theta x, theta^2 t) = u(x, t), residual / (1 + |u|)",
               [](const VerifyOptions&) {
                 const std::vector<SolutionFamily> fams{ClassicalGaussian{2}, ExoticTilde{1}, SymmetricF{1.3},
                                                        AntisymmetricF{2.7}, GelRadial{1.0}};
                 double worst = 0.0;
                 for (const auto& fam : fams) {
                   for (double theta : {0.3, 0.5, 2.0, 3.7}) {
                     for (double x : {0.1, 0.9, 2.5, 7.0}) {
                       for (double t : {0.2, 1.0, 3.0}) {
                         const DiffusionParams prm{1.3, 0.8};
                         const double u = similarity::u_similarity(fam, prm, x, t);
                         worst = std::max(worst, std::abs(similarity::similarity_check(fam, prm, x, t, theta)) / (1.0 + std::abs(u)));
                       }
                     }
                   }
                 }
                 return Outcome{worst, 1e-12};
               }});
  c.push_back({"parity", "Gaussian profiles have parity (-1)^p, exotic (-1)^(p+1), Kummer even/odd",
               [](const VerifyOptions&) {
                 std::vector<std::pair<SolutionFamily, double>> fams;
                 for (int p = 0; p <= 5; ++p) {
                   fams.emplace_back(ClassicalGaussian{p}, p % 2 == 0 ? 1.0 : -1.0);
                   fams.emplace_back(ExoticTilde{p}, p % 2 == 0 ? -1.0 : 1.0);
                 }
                 fams.emplace_back(SymmetricF{1.3}, 1.0);
                 fams.emplace_back(AntisymmetricF{1.3}, -1.0);
                 double worst = 0.0;
                 for (const auto& [fam, sign] : fams) {
                   for (double s : span_points(0.0, 30.0, 301)) {
                     worst = std::max(worst, std::abs(similarity::phi(fam, -s) - sign * similarity::phi(fam, s)));
                   }
                 }
                 return Outcome{worst, 0.0};
               }});
  c.push_back({"exotic_tail", "Exotic tail phi_p ~ (-1)^p p! / (sqrt(pi) s^(p+1)) at |s| = 30, p = 0..3",
               [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (int p = 0; p <= 3; ++p) {
                   for (double s : {-30.0, 30.0}) {
                     const double normalized = similarity::phi(ExoticTilde{p}, s) / similarity::phi_tail(ExoticTilde{p}, s);
                     worst = std::max(worst, std::abs(normalized - 1.0));
                   }
                 }
                 return Outcome{worst, 0.05};
               }});
  c.push_back({"exotic_tail_persistence", "Exotic u_0 at x = 30 is nearly time independent for Dt in {1, 4, 9}",
               [](const VerifyOptions&) {
                 std::vector<double> v;
                 for (double t : {1.0, 4.0, 9.0}) v.push_back(similarity::u_similarity(ExoticTilde{0}, {}, 30.0, t));
                 const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
                 return Outcome{(*hi - *lo) / std::abs(v.front()), 0.02};
               }});
  c.push_back({"cross_family_identity", "Odd Kummer p = 0 equals 2 sqrt(pi) times exotic p = 0 on [-10, 10]",
               [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (double s : span_points(-10.0, 10.0, 401)) {
                   worst = std::max(worst, std::abs(similarity::phi(AntisymmetricF{0.0}, s) -
                                                    2.0 * std::sqrt(std::numbers::pi) * similarity::phi(ExoticTilde{0}, s)));
                 }
                 return Outcome{worst, 1e-10};
               }});
  c.push_back({"integer_limit", "Kummer tail constants at p = n +- 1e-3 relative to p = n +- 0.5",
               [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (int n = 0; n <= 4; ++n) {
                   for (double side : {-1.0, 1.0}) {
                     if (n == 0 && side < 0.0) continue;
                     const auto constant = [n](double p) {
                       return n % 2 == 0 ? similarity::tail_constant(SymmetricF{p})
                                         : similarity::tail_constant(AntisymmetricF{p});
                     };
                     worst = std::max(worst, std::abs(constant(n + side * 1e-3)) / std::abs(constant(n + side * 0.5)));
                   }
                 }
                 return Outcome{worst, 1e-2};
               }});
  c.push_back({"mass_conservation", "Trapezoid mass of u_0 over [-40 sqrt(Dt), 40 sqrt(Dt)] equals M",
               [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (double dt : {0.25, 1.0, 4.0, 9.0}) {
                   const auto x = linspace(-40.0 * std::sqrt(dt), 40.0 * std::sqrt(dt), 4001);
                   double mass = 0.0;
                   for (std::size_t i = 1; i < x.size(); ++i) {
                     mass += 0.5 * (x[i] - x[i - 1]) * (similarity::u_similarity(ClassicalGaussian{0}, {}, x[i], dt) +
                                                        similarity::u_similarity(ClassicalGaussian{0}, {}, x[i - 1], dt));
                   }
                   worst = std::max(worst, std::abs(mass - 1.0));
                 }
                 return Outcome{worst, 1e-9};
               }});
  c.push_back({"hermite_round_trip", "Superpositions of u_p, p <= 10, survive projection and reconstruction",
               [](const VerifyOptions&) {
                 const auto x = linspace(-20.0, 20.0, 2001);
                 const std::vector<double> amps{0.7, -0.2, 0.35, 0.0, 0.1, -0.05, 0.02, 0.0, 0.004, -0.001, 0.0005};
                 std::vector<double> u(x.size(), 0.0);
                 for (std::size_t p = 0; p < amps.size(); ++p) {
                   for (std::size_t i = 0; i < x.size(); ++i) {
                     u[i] += similarity::u_similarity(ClassicalGaussian{int(p)}, {1.0, amps[p]}, x[i], 1.0);
                   }
                 }
                 const Profile start(x, u, 1.0);
                 const auto coeffs = similarity::hermite_project(start, 1.0, 1.0, 10);
                 const Profile back = similarity::reconstruct(coeffs, 1.0, 1.0, x);
                 double num = 0.0, den = 0.0;
                 for (std::size_t i = 0; i < x.size(); ++i) {
                   num += (back.values()[i] - u[i]) * (back.values()[i] - u[i]);
                   den += u[i] * u[i];
                 }
                 return Outcome{std::sqrt(num / den), 1e-8};
               }});
  c.push_back({"gel_psi1_derivative", "psi_1' matches finite differences of psi_1 on [0.1, 12]",
               [](const VerifyOptions&) {
                 double worst = 0.0;
                 const auto f = [](double s) { return gel::psi(1.0, s); };
                 for (double s : span_points(0.1, 12.0, 239)) {
                   worst = std::max(worst, std::abs(gel::psi1_prime(s) - fd::richardson_d1(f, s, 1e-3)));
                 }
                 return Outcome{worst, 1e-8};
               }});
  c.push_back({"gel_density_identity", "psi_1' + 2 psi_1 / s = 3 exp(-s^2/4) on (0, 12]",
               [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (int i = 1; i <= 1200; ++i) {
                   const double s = 0.01 * i;
                   worst = std::max(worst, std::abs(gel::psi1_prime(s) + 2.0 * gel::psi(1.0, s) / s -
                                                    3.0 * std::exp(-0.25 * s * s)));
                 }
                 return Outcome{worst, 1e-9};
               }});
  c.push_back({"gel_density_pde", "r times the density deviation solves the 1D diffusion equation",
               [](const VerifyOptions&) {
                 const gel::GelParams g{};
                 const auto f = [&](double r, double t) { return r * gel::density_deviation(g, r, t); };
                 double worst = 0.0;
                 for (double t : {0.5, 1.0, 3.0}) {
                   for (double r : span_points(0.3, 8.0, 18)) {
                     worst = std::max(worst, std::abs(oracle::pde_residual(f, r, t, 1e-3, g.diffusion())));
                   }
                 }
                 return Outcome{worst, 1e-6};
               }});
  c.push_back({"gel_far_field", "Matched displacement approaches eps V0 / (4 pi r^2) for r >= 10 sqrt(Dt)",
               [](const VerifyOptions&) {
                 const gel::GelParams g{};
                 const double amp = gel::matched_amplitude(g);
                 double worst = 0.0;
                 for (double t : {1.0, 4.0, 9.0, 25.0}) {
                   for (double k : {10.0, 15.0, 30.0}) {
                     const double r = k * std::sqrt(g.diffusion() * t);
                     const double far = g.strain * g.core_volume() / (4.0 * std::numbers::pi * r * r);
                     worst = std::max(worst, std::abs(gel::displacement(g, 1.0, r, t, amp) / far - 1.0));
                   }
                 }
                 return Outcome{worst, 0.01};
               }});
  c.push_back({"gel_incompressibility", "Injection displacement is divergence free outside the core",
               [](const VerifyOptions&) {
                 const gel::GelParams g{};
                 return Outcome{gel::incompressibility_residual(gel::injection_ic(g, linspace(0.01, 10.0, 1000)), g), 1e-6};
               }});
  c.push_back({"oracle_classical", "Crank-Nicolson u_0 from Dt = 1 to 4 and 9, L-inf relative on |x| <= 10",
               [](const VerifyOptions&) { return oracle_1d(ClassicalGaussian{0}); }});
  c.push_back({"oracle_exotic0", "Crank-Nicolson exotic u_0 from Dt = 1 to 4 and 9, L-inf relative on |x| <= 10",
               [](const VerifyOptions&) { return oracle_1d(ExoticTilde{0}); }});
  c.push_back({"oracle_exotic1", "Crank-Nicolson exotic u_1 from Dt = 1 to 4 and 9, L-inf relative on |x| <= 10",
               [](const VerifyOptions&) { return oracle_1d(ExoticTilde{1}); }});
  c.push_back({"oracle_gel_displacement", "Radial Crank-Nicolson U_1 from Dt = 1 to 4 and 9, L-inf relative on r <= 10",
               [](const VerifyOptions&) { return oracle_radial(); }});
  c.push_back({"oracle_convergence", "Halving dx and dt cuts the u_0 error about 4x, |ratio - 4|",
               [](const VerifyOptions&) { return oracle_convergence(); }});
  c.push_back({"gel_relaxation", "Injected density approaches the Gaussian within 2% (r^2-weighted L2) by Dt = 25",
               [](const VerifyOptions&) {
                 const GelSimResult& r = shared_gel_run();
                 return Outcome{r.l2_decreasing ? r.snapshots.back().l2_distance : INFINITY, 0.02};
               }});
  c.push_back({"gel_volume", "Integrated solvent volume stays eps V0 at every snapshot",
               [](const VerifyOptions&) { return Outcome{shared_gel_run().max_volume_error, 0.01}; }});
  c.push_back({"gel_tail", "r^2 U at the tail radius is stable over Dt in [9, 25]",
               [](const VerifyOptions&) { return Outcome{shared_gel_run().tail_variation, 0.01}; }});
  return c;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& c : all_checks()) names.push_back(c.name);
  return names;
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (!(options.tol_scale > 0.0) || !std::isfinite(options.tol_scale)) {
    throw std::invalid_argument("verify: tolerance scale must be positive");
  }
  std::vector<Check> selected;
  for (auto& c : all_checks()) {
    if (options.only.empty() || c.name.find(options.only) != std::string::npos) selected.push_back(std::move(c));
  }

  std::vector<VerifyRecord> records(selected.size());
  const auto evaluate = [&](std::size_t i) {
    const Check& c = selected[i];
    Outcome out{INFINITY, 0.0};
    try {
      out = c.run(options);
    } catch (const std::exception&) {
      out.residual = INFINITY;
    }
    const double tol = out.tolerance * options.tol_scale;
    records[i] = {c.name, c.statement, out.residual, tol, std::isfinite(out.residual) && out.residual <= tol};
  };

  unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(selected.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < selected.size(); i = next++) evaluate(i);
    });
  }
  for (auto& t : pool) t.join();

  VerifyReport report;
  report.records = std::move(records);
  for (const auto& r : report.records) report.pass = report.pass && r.pass;
  return report;
}

std::string report_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json rec;
    rec["name"] = r.name;
    rec["paper_ref"] = r.paper_ref;
    // JSON has no infinity; a failed evaluation is reported as null.
    if (std::isfinite(r.max_residual)) {
      rec["max_residual"] = r.max_residual;
    } else {
      rec["max_residual"] = nullptr;
    }
    rec["tolerance"] = r.tolerance;
    rec["pass"] = r.pass;
    j["records"].push_back(rec);
  }
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

double tol_scale_from_env() {
  const char* raw = std::getenv("SIMDIFF_TOL_SCALE");
  if (raw == nullptr || *raw == '\0') return 1.0;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument("SIMDIFF_TOL_SCALE must be a positive number");
  }
  return v;
}

}  // namespace simdiff::app
