#include "simdiff/app/presets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "simdiff/app/csv_io.hpp"
#include "simdiff/similarity1d.hpp"

namespace simdiff::app {

GridSpec GridSpec::parse(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
    throw std::invalid_argument("grid must look like min:max:n");
  }
  GridSpec g;
  try {
    std::size_t used = 0;
    const std::string lo(text.substr(0, a)), hi(text.substr(a + 1, b - a - 1)), n(text.substr(b + 1));
    g.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    g.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    const long long count = std::stoll(n, &used);
    if (used != n.size() || count < 2) throw std::invalid_argument(n);
    g.n = static_cast<std::size_t>(count);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must look like min:max:n with n >= 2");
  }
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::invalid_argument("grid: need finite min < max");
  }
  if (n < 2) throw std::invalid_argument("grid: need n >= 2");
}

std::vector<double> GridSpec::points() const {
  validate();
  return linspace(lo, hi, n);
}

void ProfileRequest::validate() const {
  simdiff::validate(family);
  similarity::DiffusionParams{d_coeff, amplitude}.validate();
  grid.validate();
  if (times.empty()) throw std::invalid_argument("profile: no times given");
  for (double t : times) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("profile: times must be positive");
  }
  if (std::holds_alternative<GelRadial>(family) && grid.lo < 0.0) {
    throw std::invalid_argument("profile: gel radii must be nonnegative");
  }
}

std::vector<ProfileRequest> preset(std::string_view name) {
  const std::vector<double> three{1.0, 4.0, 9.0};
  const std::string tag(name);
  if (name == "fig1") return {{tag, ClassicalGaussian{0}, 1.0, 1.0, three, {-10.0, 10.0, 401}}};
  if (name == "fig2") {
    std::vector<ProfileRequest> out;
    for (int p = 0; p <= 2; ++p) out.push_back({tag, ExoticTilde{p}, 1.0, 1.0, {1.0}, {-30.0, 30.0, 1201}});
    return out;
  }
  if (name == "fig3") return {{tag, ExoticTilde{0}, 1.0, 1.0, three, {-40.0, 40.0, 801}}};
  if (name == "fig5") return {{tag, GelRadial{1.0}, 1.0, 1.0, three, {0.0, 20.0, 401}}};
  throw std::invalid_argument("unknown preset '" + tag + "' (fig1, fig2, fig3, fig5)");
}

std::vector<CsvFile> render_profiles(const ProfileRequest& request) {
  request.validate();
  const auto x = request.grid.points();
  const similarity::DiffusionParams params{request.d_coeff, request.amplitude};
  const double p = exponent(request.family);
  const std::string family = family_name(request.family);
  std::vector<CsvFile> files;
  std::vector<double> values(x.size());
  for (double t : request.times) {
    for (std::size_t i = 0; i < x.size(); ++i) values[i] = similarity::u_similarity(request.family, params, x[i], t);
    const CsvHeader header{family, p, request.d_coeff, t};
    files.push_back({request.tag + "_" + family + "_p" + short_number(p) + "_t" + short_number(t) + ".csv",
                     to_csv(header, x, values)});
  }
  return files;
}

}  // namespace simdiff::app
