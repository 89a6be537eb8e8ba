#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace rosefit {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Direction on the circle, radians in [0, 2pi). Mathematical convention:
/// 0 is the +x axis and angles grow counterclockwise.
class Angle {
public:
  constexpr Angle() = default;

  /// Wraps any finite value into [0, 2pi). Throws InputError on NaN/inf.
  explicit Angle(double radians);

  [[nodiscard]] constexpr double radians() const noexcept { return value_; }

  friend constexpr bool operator==(Angle, Angle) = default;

private:
  double value_ = 0.0;
};

/// x mod 2pi in [0, 2pi).
Angle wrap_angle(double x);

/// (a - b) wrapped into the half-open range [-pi, pi).
double angular_difference(Angle a, Angle b) noexcept;

/// Index of the bin [i*2pi/B, (i+1)*2pi/B) containing a.
std::size_t bin_index(Angle a, std::size_t bin_count) noexcept;

/// Representative point of bin i: (i + 0.5) * 2pi / B.
Angle bin_center(std::size_t i, std::size_t bin_count);

/// Frequencies over B equal circular bins.
class AngularHistogram {
public:
  /// Wraps precomputed bin values. Values must be finite and nonnegative;
  /// when normalized is true they must sum to 1 within 1e-12.
  AngularHistogram(std::vector<double> values, bool normalized);

  [[nodiscard]] std::size_t bin_count() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_.at(i); }
  [[nodiscard]] bool normalized() const noexcept { return normalized_; }
  [[nodiscard]] double bin_width() const noexcept {
    return kTwoPi / static_cast<double>(values_.size());
  }

  /// Histogram whose bin i holds this histogram's bin (i - shift) mod B.
  [[nodiscard]] AngularHistogram cyclic_shift(std::ptrdiff_t shift) const;

  /// Largest |value[i] - value[(i + B/2) mod B]| and the bin i where it occurs.
  /// Returns nullopt for odd B, where point symmetry cannot hold on the bin grid.
  struct SymmetryDefect {
    double magnitude;
    std::size_t bin;
  };
  [[nodiscard]] std::optional<SymmetryDefect> point_symmetry_defect() const;

private:
  std::vector<double> values_;
  bool normalized_;
};

/// Weighted histogram of angles, normalized to unit mass.
/// Throws InputError on empty input, mismatched weights, negative weights or
/// zero total weight.
AngularHistogram build_histogram(std::span<const Angle> angles,
                                 std::span<const double> weights,
                                 std::size_t bin_count);
AngularHistogram build_histogram(std::span<const Angle> angles, std::size_t bin_count);

/// Value of the bin containing a.
double histogram_lookup(const AngularHistogram& h, Angle a) noexcept;

/// Uniform normalized histogram, 1/B in every bin.
AngularHistogram uniform_histogram(std::size_t bin_count);

}  // namespace rosefit
