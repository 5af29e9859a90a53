#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "simdiff/fields.hpp"

namespace simdiff::app {

/// Uniform grid written as "min:max:n".
struct GridSpec {
  double lo = -10.0;
  double hi = 10.0;
  std::size_t n = 401;

  static GridSpec parse(std::string_view text);
  void validate() const;
  std::vector<double> points() const;
};

/// One family sampled at several times. For the gel family the abscissa is r
/// and must be nonnegative.
struct ProfileRequest {
  std::string tag;
  SolutionFamily family = ClassicalGaussian{0};
  double d_coeff = 1.0;
  double amplitude = 1.0;
  std::vector<double> times{1.0};
  GridSpec grid;

  void validate() const;
};

struct CsvFile {
  std::string name;
  std::string content;
};

inline constexpr std::string_view kPresetNames[] = {"fig1", "fig2", "fig3", "fig5"};

/// fig1: u_0 at Dt = 1, 4, 9. fig2: exotic p = 0, 1, 2 scaling functions
/// (sampled at D = t = 1, so the abscissa is s). fig3: exotic u_0 at Dt = 1, 4, 9.
/// fig5: gel displacement U_1 with unit amplitude at Dt = 1, 4, 9.
/// Throws std::invalid_argument for an unknown name.
std::vector<ProfileRequest> preset(std::string_view name);

/// One CSV per requested time, named <tag>_<family>_p<p>_t<t>.csv.
std::vector<CsvFile> render_profiles(const ProfileRequest& request);

}  // namespace simdiff::app
