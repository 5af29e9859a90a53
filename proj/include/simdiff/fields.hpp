#pragma once

// Sampled fields shared by the analytic modules and the finite-difference
// oracle. Both types validate their invariants on construction and are
// immutable afterwards.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace simdiff {

// Scaling-function families. `p` is the similarity exponent: a solution
// u(x,t) = M (Dt)^{-(p+1)/2} phi(x / sqrt(Dt)).
struct ClassicalGaussian {
  int p = 0;
};
struct ExoticTilde {
  int p = 0;
};
struct SymmetricF {
  double p = 0.0;
};
struct AntisymmetricF {
  double p = 0.0;
};
struct GelRadial {
  double p = 1.0;
};

using SolutionFamily =
    std::variant<ClassicalGaussian, ExoticTilde, SymmetricF, AntisymmetricF, GelRadial>;

/// Throws std::invalid_argument if p < 0 (or non-finite).
void validate(const SolutionFamily& family);

/// The similarity exponent p of any family, as a real number.
double exponent(const SolutionFamily& family);

/// Short stable name: classical, exotic, symmetric, antisymmetric, gel.
std::string family_name(const SolutionFamily& family);

/// Parses a family_name() back; throws std::invalid_argument otherwise.
/// Integer families reject non-integer p.
SolutionFamily make_family(const std::string& name, double p);

class Profile {
 public:
  /// Throws std::invalid_argument if the grid is not strictly increasing, the
  /// lengths differ, a value is non-finite, or time < 0.
  Profile(std::vector<double> grid, std::vector<double> values, double time,
          std::optional<SolutionFamily> family = std::nullopt);

  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return grid_.size(); }
  double time() const { return time_; }
  const std::optional<SolutionFamily>& family() const { return family_; }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  double time_;
  std::optional<SolutionFamily> family_;
};

enum class RadialKind { displacement, density };

class RadialField {
 public:
  /// Throws std::invalid_argument unless radii are positive and strictly
  /// increasing, lengths match, values are finite and time >= 0.
  RadialField(std::vector<double> radii, std::vector<double> values, double time,
              RadialKind kind);

  std::span<const double> radii() const { return radii_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return radii_.size(); }
  double time() const { return time_; }
  RadialKind kind() const { return kind_; }

 private:
  std::vector<double> radii_;
  std::vector<double> values_;
  double time_;
  RadialKind kind_;
};

/// n uniformly spaced points from lo to hi inclusive (n >= 2).
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace simdiff
