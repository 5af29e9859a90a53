#include "simdiff/fields.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace simdiff {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_samples(std::span<const double> grid, std::span<const double> values,
                   const char* what) {
  if (grid.size() != values.size()) {
    throw std::invalid_argument(std::string(what) + ": grid and values differ in length");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !std::isfinite(values[i])) {
      throw std::invalid_argument(std::string(what) + ": non-finite sample at index " +
                                  std::to_string(i));
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string(what) + ": abscissas must be strictly increasing");
    }
  }
}

}  // namespace

void validate(const SolutionFamily& family) {
  const double p = exponent(family);
  if (!std::isfinite(p) || p < 0.0) {
    throw std::invalid_argument("solution family: p must be a finite non-negative number");
  }
}

double exponent(const SolutionFamily& family) {
  return std::visit([](const auto& f) { return static_cast<double>(f.p); }, family);
}

std::string family_name(const SolutionFamily& family) {
  return std::visit(overloaded{
                        [](const ClassicalGaussian&) { return std::string("classical"); },
                        [](const ExoticTilde&) { return std::string("exotic"); },
                        [](const SymmetricF&) { return std::string("symmetric"); },
                        [](const AntisymmetricF&) { return std::string("antisymmetric"); },
                        [](const GelRadial&) { return std::string("gel"); },
                    },
                    family);
}

SolutionFamily make_family(const std::string& name, double p) {
  const auto as_int = [&]() {
    if (p != std::floor(p)) {
      throw std::invalid_argument("family '" + name + "' needs an integer p");
    }
    return static_cast<int>(p);
  };
  SolutionFamily family;
  if (name == "classical") {
    family = ClassicalGaussian{as_int()};
  } else if (name == "exotic") {
    family = ExoticTilde{as_int()};
  } else if (name == "symmetric") {
    family = SymmetricF{p};
  } else if (name == "antisymmetric") {
    family = AntisymmetricF{p};
  } else if (name == "gel") {
    family = GelRadial{p};
  } else {
    throw std::invalid_argument("unknown family '" + name + "'");
  }
  validate(family);
  return family;
}

Profile::Profile(std::vector<double> grid, std::vector<double> values, double time,
                 std::optional<SolutionFamily> family)
    : grid_(std::move(grid)), values_(std::move(values)), time_(time), family_(std::move(family)) {
  check_samples(grid_, values_, "Profile");
  if (!(time_ >= 0.0)) throw std::invalid_argument("Profile: time must be >= 0");
}

RadialField::RadialField(std::vector<double> radii, std::vector<double> values, double time,
                         RadialKind kind)
    : radii_(std::move(radii)), values_(std::move(values)), time_(time), kind_(kind) {
  check_samples(radii_, values_, "RadialField");
  if (!radii_.empty() && !(radii_.front() > 0.0)) {
    throw std::invalid_argument("RadialField: radii must be positive");
  }
  if (!(time_ >= 0.0)) throw std::invalid_argument("RadialField: time must be >= 0");
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw std::invalid_argument("linspace: need n >= 2 and hi > lo");
  std::vector<double> out(n);
  const double span = hi - lo;
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + span * static_cast<double>(i) / denom;
  out.back() = hi;
  return out;
}

}  // namespace simdiff
