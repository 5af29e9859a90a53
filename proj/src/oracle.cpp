#include "simdiff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "simdiff/finite_difference.hpp"

namespace simdiff::oracle {

namespace {

// Constant-coefficient-per-row tridiagonal system
//   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i],
// factored once and reused every step.
class Tridiagonal {
 public:
  Tridiagonal(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper)
      : lower_(std::move(lower)), upper_(std::move(upper)), inv_pivot_(diag.size()),
        c_prime_(diag.size()) {
    const std::size_t n = diag.size();
    double pivot = diag[0];
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) pivot = diag[i] - lower_[i] * c_prime_[i - 1];
      if (pivot == 0.0) throw std::runtime_error("Tridiagonal: zero pivot");
      inv_pivot_[i] = 1.0 / pivot;
      c_prime_[i] = upper_[i] * inv_pivot_[i];
    }
  }

  void solve(std::vector<double>& rhs) const {
    const std::size_t n = rhs.size();
    rhs[0] *= inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * inv_pivot_[i];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c_prime_[i] * rhs[i + 1];
  }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> inv_pivot_;
  std::vector<double> c_prime_;
};

double uniform_spacing(std::span<const double> x, const char* who) {
  if (x.size() < 3) throw std::invalid_argument(std::string(who) + ": need at least 3 points");
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs((x[i] - x[i - 1]) - h) > 1e-6 * h) {
      throw std::invalid_argument(std::string(who) + ": grid must be uniform");
    }
  }
  return h;
}

BoundaryFn resolve_bc(const EvolveSpec& spec, const BoundaryFn& bc, const char* who) {
  if (spec.bc == BoundaryKind::zero) return [](double, double) { return 0.0; };
  if (!bc) throw std::invalid_argument(std::string(who) + ": boundary callable required");
  return bc;
}

void check_start_time(double profile_time, const EvolveSpec& spec, const char* who) {
  if (std::abs(profile_time - spec.t_start) > 1e-12 * std::max(1.0, spec.t_start)) {
    throw std::invalid_argument(std::string(who) + ": initial profile time differs from t_start");
  }
}

// Crank-Nicolson march for W_t = D W_xx - D reaction[i] W on interior nodes
// 1..n-2, with node 0 at left_value(t) and node n-1 at right_value(t).
template <class Left, class Right>
std::vector<double> crank_nicolson(std::vector<double> w, double h,
                                   const std::vector<double>& reaction, const EvolveSpec& spec,
                                   const Left& left_value, const Right& right_value) {
  const std::size_t n = w.size();
  const std::size_t m = n - 2;
  const double span = spec.t_end - spec.t_start;
  const auto steps = static_cast<std::size_t>(std::ceil(span / spec.dt - 1e-9));
  const double dt = span / static_cast<double>(steps);
  const double lambda = spec.d_coeff * dt / (h * h);

  std::vector<double> lower(m, -0.5 * lambda), diag(m), upper(m, -0.5 * lambda);
  std::vector<double> explicit_diag(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double react = 0.5 * spec.d_coeff * dt * reaction[i + 1];
    diag[i] = 1.0 + lambda + react;
    explicit_diag[i] = 1.0 - lambda - react;
  }
  lower[0] = 0.0;
  upper[m - 1] = 0.0;
  const Tridiagonal system(lower, diag, upper);

  std::vector<double> rhs(m);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t_next = spec.t_start + dt * static_cast<double>(step + 1);
    const double left_next = left_value(t_next);
    const double right_next = right_value(t_next);
    for (std::size_t i = 0; i < m; ++i) {
      rhs[i] = 0.5 * lambda * (w[i] + w[i + 2]) + explicit_diag[i] * w[i + 1];
    }
    rhs[0] += 0.5 * lambda * left_next;
    rhs[m - 1] += 0.5 * lambda * right_next;
    system.solve(rhs);
    w[0] = left_next;
    w[n - 1] = right_next;
    std::copy(rhs.begin(), rhs.end(), w.begin() + 1);
  }
  return w;
}

}  // namespace

void Grid1D::validate() const {
  if (!(x_min < x_max)) throw std::invalid_argument("Grid1D: x_min must be < x_max");
  if (n_points < 3) throw std::invalid_argument("Grid1D: n_points must be >= 3");
}

double Grid1D::spacing() const {
  validate();
  return (x_max - x_min) / static_cast<double>(n_points - 1);
}

std::vector<double> Grid1D::points() const {
  validate();
  return linspace(x_min, x_max, n_points);
}

void EvolveSpec::validate() const {
  if (!(d_coeff > 0.0)) throw std::invalid_argument("EvolveSpec: d_coeff must be positive");
  if (!(t_start > 0.0) || !(t_end > t_start)) {
    throw std::invalid_argument("EvolveSpec: need 0 < t_start < t_end");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("EvolveSpec: dt must be positive");
}

double default_half_width(double d_coeff, double t_end) {
  return std::max(40.0, 20.0 * std::sqrt(d_coeff * t_end));
}

Grid1D default_grid(double d_coeff, double t_end, std::size_t n_points) {
  const double half = default_half_width(d_coeff, t_end);
  return Grid1D{-half, half, n_points};
}

double default_dt(double d_coeff, double dx) { return dx * dx / d_coeff; }

Profile evolve_1d(const Profile& initial, const EvolveSpec& spec, const BoundaryFn& bc) {
  spec.validate();
  check_start_time(initial.time(), spec, "evolve_1d");
  const BoundaryFn boundary = resolve_bc(spec, bc, "evolve_1d");
  const auto x = initial.grid();
  const double h = uniform_spacing(x, "evolve_1d");
  const double x_left = x.front();
  const double x_right = x.back();

  std::vector<double> u(initial.values().begin(), initial.values().end());
  const std::vector<double> no_reaction(u.size(), 0.0);
  u = crank_nicolson(
      std::move(u), h, no_reaction, spec, [&](double t) { return boundary(x_left, t); },
      [&](double t) { return boundary(x_right, t); });
  return Profile(std::vector<double>(x.begin(), x.end()), std::move(u), spec.t_end,
                 initial.family());
}

RadialField evolve_radial(const RadialField& initial, const EvolveSpec& spec,
                          const BoundaryFn& bc) {
  spec.validate();
  check_start_time(initial.time(), spec, "evolve_radial");
  if (initial.kind() != RadialKind::displacement) {
    throw std::invalid_argument("evolve_radial: needs a displacement field");
  }
  const BoundaryFn boundary = resolve_bc(spec, bc, "evolve_radial");
  const auto r = initial.radii();
  const double h = uniform_spacing(r, "evolve_radial");
  if (std::abs(r.front() - h) > 1e-6 * h) {
    throw std::invalid_argument("evolve_radial: innermost radius must equal the spacing");
  }
  // Node 0 is the origin (W = 0); nodes 1..n hold the field's radii.
  const std::size_t n = r.size() + 1;
  std::vector<double> w(n, 0.0);
  std::vector<double> reaction(n, 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    w[i + 1] = r[i] * initial.values()[i];
    reaction[i + 1] = 2.0 / (r[i] * r[i]);
  }
  const double r_out = r.back();
  w = crank_nicolson(
      std::move(w), h, reaction, spec, [](double) { return 0.0; },
      [&](double t) { return r_out * boundary(r_out, t); });

  std::vector<double> u(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) u[i] = w[i + 1] / r[i];
  return RadialField(std::vector<double>(r.begin(), r.end()), std::move(u), spec.t_end,
                     initial.kind());
}

double pde_residual(const std::function<double(double, double)>& fn, double x, double t,
                    double h, double d_coeff) {
  if (!(h > 0.0) || !(t > h)) throw std::invalid_argument("pde_residual: need 0 < h < t");
  const double u_t = fd::richardson_d1([&](double tau) { return fn(x, tau); }, t, h);
  const double u_xx = fd::richardson_d2([&](double y) { return fn(y, t); }, x, h);
  return u_t - d_coeff * u_xx;
}

}  // namespace simdiff::oracle
