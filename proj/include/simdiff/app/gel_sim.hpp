#pragma once

// Injection experiment: evolve the injection displacement with the radial
// oracle and compare every snapshot with the p = 1 similarity solution.

#include <string>
#include <vector>

#include "simdiff/fields.hpp"
#include "simdiff/gel3d.hpp"

namespace simdiff::app {

struct GelSimConfig {
  gel::GelParams params;
  std::vector<double> times{1.0, 4.0, 9.0, 16.0, 25.0};
  double dr = 0.0;      ///< 0: R0 / 50
  double r_max = 0.0;   ///< 0: 20 sqrt(D t_end)
  double r_tail = 0.0;  ///< 0: 6 sqrt(D t_end)
  double tail_dt_lo = 9.0;   ///< tail metric uses snapshots with D t in [lo, hi]
  double tail_dt_hi = 25.0;

  /// Throws std::invalid_argument; a core radius under five grid spacings is
  /// a resolution error.
  void validate() const;
  double spacing() const;
  double outer_radius() const;
  double tail_radius() const;
};

struct GelSnapshot {
  double time;
  RadialField displacement;
  RadialField density;
  double l2_distance;   ///< r^2-weighted relative L2 distance of density to the Gaussian
  double volume;        ///< integrated solvent volume
  double volume_error;  ///< |volume / (eps V0) - 1|
  double tail_r2u;      ///< r^2 U at the tail radius
};

struct GelSimResult {
  std::vector<GelSnapshot> snapshots;
  double r_tail = 0.0;
  double tail_variation = 0.0;  ///< (max - min) / mean of r^2 U over the tail window
  bool l2_decreasing = true;
  double max_volume_error = 0.0;
  bool converged = true;  ///< final L2 < 2% whenever sqrt(D t) >= 3 R0
  bool pass = false;
};

GelSimResult run_gel_sim(const GelSimConfig& config);

/// JSON summary with schema 1.
std::string gel_summary_json(const GelSimConfig& config, const GelSimResult& result);

}  // namespace simdiff::app
