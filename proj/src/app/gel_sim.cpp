#include "simdiff/app/gel_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"
#include "simdiff/oracle.hpp"

namespace simdiff::app {

namespace {

constexpr double kL2Limit = 0.02;
constexpr double kVolumeLimit = 0.01;
constexpr double kTailLimit = 0.01;

// The injection is instantaneous; the oracle needs t_start > 0.
constexpr double kStartOffset = 1e-9;

double weighted_l2(std::span<const double> r, std::span<const double> a,
                   const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double h = r[i] - r[i - 1];
    const auto sq = [&](std::size_t j) { return (a[j] - b[j]) * (a[j] - b[j]) * r[j] * r[j]; };
    const auto ref = [&](std::size_t j) { return b[j] * b[j] * r[j] * r[j]; };
    num += 0.5 * h * (sq(i) + sq(i - 1));
    den += 0.5 * h * (ref(i) + ref(i - 1));
  }
  return std::sqrt(num / den);
}

double interpolate(std::span<const double> r, std::span<const double> v, double x) {
  const auto it = std::lower_bound(r.begin(), r.end(), x);
  if (it == r.begin()) return v.front();
  if (it == r.end()) return v.back();
  const auto j = static_cast<std::size_t>(it - r.begin());
  const double w = (x - r[j - 1]) / (r[j] - r[j - 1]);
  return (1.0 - w) * v[j - 1] + w * v[j];
}

}  // namespace

void GelSimConfig::validate() const {
  params.validate();
  if (times.empty()) throw std::invalid_argument("gel-sim: no snapshot times");
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev) || !std::isfinite(t)) {
      throw std::invalid_argument("gel-sim: times must be positive and increasing");
    }
    prev = t;
  }
  if (dr < 0.0 || r_max < 0.0 || r_tail < 0.0) throw std::invalid_argument("gel-sim: negative length");
  if (params.core_radius < 5.0 * spacing()) {
    throw std::invalid_argument("gel-sim: core radius spans fewer than 5 grid spacings");
  }
  if (outer_radius() <= tail_radius()) {
    throw std::invalid_argument("gel-sim: tail radius lies outside the grid");
  }
  if (!(tail_dt_lo <= tail_dt_hi)) throw std::invalid_argument("gel-sim: empty tail window");
}

double GelSimConfig::spacing() const { return dr > 0.0 ? dr : params.core_radius / 50.0; }

double GelSimConfig::outer_radius() const {
  return r_max > 0.0 ? r_max : 20.0 * std::sqrt(params.diffusion() * times.back());
}

double GelSimConfig::tail_radius() const {
  return r_tail > 0.0 ? r_tail : 6.0 * std::sqrt(params.diffusion() * times.back());
}

GelSimResult run_gel_sim(const GelSimConfig& config) {
  config.validate();
  const gel::GelParams& g = config.params;
  const double d = g.diffusion();
  const double h = config.spacing();
  const auto n = static_cast<std::size_t>(std::ceil(config.outer_radius() / h));
  const auto radii = linspace(h, static_cast<double>(n) * h, n);

  const RadialField ic = gel::injection_ic(g, radii);
  RadialField field(radii, std::vector<double>(ic.values().begin(), ic.values().end()), kStartOffset,
                    RadialKind::displacement);
  const double far = g.strain * g.core_volume() / (4.0 * std::numbers::pi);
  const oracle::BoundaryFn bc = [far](double r, double) { return far / (r * r); };

  GelSimResult result;
  result.r_tail = config.tail_radius();
  const double injected = g.strain * g.core_volume();
  double t_prev = kStartOffset;
  std::vector<double> tail;
  for (double t : config.times) {
    field = oracle::evolve_radial(field, {d, t_prev, t, oracle::default_dt(d, h)}, bc);
    t_prev = t;
    RadialField density = gel::density_from_displacement(field);
    std::vector<double> exact(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) exact[i] = gel::density_deviation(g, radii[i], t);
    const double l2 = weighted_l2(radii, density.values(), exact);
    const double volume = gel::solvent_volume(density);
    const double r2u = result.r_tail * result.r_tail * interpolate(radii, field.values(), result.r_tail);
    if (!result.snapshots.empty() && l2 >= result.snapshots.back().l2_distance) result.l2_decreasing = false;
    result.max_volume_error = std::max(result.max_volume_error, std::abs(volume / injected - 1.0));
    if (d * t >= config.tail_dt_lo && d * t <= config.tail_dt_hi) tail.push_back(r2u);
    result.snapshots.push_back({t, field, std::move(density), l2, volume, std::abs(volume / injected - 1.0), r2u});
  }
  if (tail.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    double mean = 0.0;
    for (double v : tail) mean += v / static_cast<double>(tail.size());
    result.tail_variation = (*hi - *lo) / std::abs(mean);
  }
  const GelSnapshot& last = result.snapshots.back();
  result.converged = std::sqrt(d * last.time) < 3.0 * g.core_radius || last.l2_distance < kL2Limit;
  result.pass = result.l2_decreasing && result.converged && result.max_volume_error < kVolumeLimit &&
                result.tail_variation < kTailLimit;
  return result;
}

std::string gel_summary_json(const GelSimConfig& config, const GelSimResult& result) {
  const gel::GelParams& g = config.params;
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["params"] = {{"friction", g.friction},       {"shear_mod", g.shear_mod},
                 {"bulk_mod", g.bulk_mod},       {"strain", g.strain},
                 {"core_radius", g.core_radius}, {"diffusion", g.diffusion()},
                 {"dr", config.spacing()},       {"r_max", config.outer_radius()}};
  j["injected_volume"] = g.strain * g.core_volume();
  nlohmann::ordered_json snaps = nlohmann::ordered_json::array();
  for (const auto& s : result.snapshots) {
    snaps.push_back({{"time", s.time},
                     {"l2_distance", s.l2_distance},
                     {"volume", s.volume},
                     {"volume_error", s.volume_error},
                     {"tail_r2u", s.tail_r2u}});
  }
  j["snapshots"] = snaps;
  j["l2_decreasing"] = result.l2_decreasing;
  j["l2_limit"] = kL2Limit;
  j["converged"] = result.converged;
  j["max_volume_error"] = result.max_volume_error;
  j["volume_limit"] = kVolumeLimit;
  j["tail"] = {{"radius", result.r_tail},
               {"dt_window", {config.tail_dt_lo, config.tail_dt_hi}},
               {"far_field_r2u", g.strain * g.core_volume() / (4.0 * std::numbers::pi)},
               {"variation", result.tail_variation},
               {"limit", kTailLimit}};
  j["pass"] = result.pass;
  return j.dump(2) + "\n";
}

}  // namespace simdiff::app
