#include "rosefit/circular.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "rosefit/error.hpp"

namespace rosefit {

namespace {
constexpr double kNormalizationTolerance = 1e-12;
}

Angle::Angle(double radians) {
  if (!std::isfinite(radians)) {
    throw InputError("angle is not finite");
  }
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) {
    r += kTwoPi;
  }
  // -tiny + 2pi rounds to 2pi
  if (r >= kTwoPi) {
    r = 0.0;
  }
  value_ = r;
}

Angle wrap_angle(double x) { return Angle(x); }

double angular_difference(Angle a, Angle b) noexcept {
  double d = a.radians() - b.radians();  // (-2pi, 2pi), exact negation when swapped
  if (d >= std::numbers::pi) {
    d -= kTwoPi;
  } else if (d < -std::numbers::pi) {
    d += kTwoPi;
  }
  return d;
}

std::size_t bin_index(Angle a, std::size_t bin_count) noexcept {
  const auto b = static_cast<double>(bin_count);
  auto i = static_cast<std::size_t>(std::floor(a.radians() * b / kTwoPi));
  return i < bin_count ? i : bin_count - 1;
}

Angle bin_center(std::size_t i, std::size_t bin_count) {
  if (bin_count == 0 || i >= bin_count) {
    throw InputError("bin index " + std::to_string(i) + " out of range for " +
                     std::to_string(bin_count) + " bins");
  }
  return Angle((static_cast<double>(i) + 0.5) * kTwoPi / static_cast<double>(bin_count));
}

AngularHistogram::AngularHistogram(std::vector<double> values, bool normalized)
    : values_(std::move(values)), normalized_(normalized) {
  if (values_.empty()) {
    throw InputError("histogram needs at least one bin");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InputError("histogram values must be finite and nonnegative");
    }
  }
  if (normalized_) {
    const double total = std::accumulate(values_.begin(), values_.end(), 0.0);
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
      throw InputError("normalized histogram sums to " + std::to_string(total));
    }
  }
}

AngularHistogram AngularHistogram::cyclic_shift(std::ptrdiff_t shift) const {
  const auto b = static_cast<std::ptrdiff_t>(values_.size());
  std::vector<double> out(values_.size());
  for (std::ptrdiff_t i = 0; i < b; ++i) {
    out[static_cast<std::size_t>(((i + shift) % b + b) % b)] = values_[static_cast<std::size_t>(i)];
  }
  AngularHistogram h = *this;
  h.values_ = std::move(out);
  return h;
}

std::optional<AngularHistogram::SymmetryDefect> AngularHistogram::point_symmetry_defect() const {
  const std::size_t b = values_.size();
  if (b % 2 != 0) {
    return std::nullopt;
  }
  SymmetryDefect worst{0.0, 0};
  for (std::size_t i = 0; i < b / 2; ++i) {
    const double d = std::abs(values_[i] - values_[i + b / 2]);
    if (d > worst.magnitude) {
      worst = {d, i};
    }
  }
  return worst;
}

AngularHistogram build_histogram(std::span<const Angle> angles,
                                 std::span<const double> weights,
                                 std::size_t bin_count) {
  if (bin_count == 0) {
    throw InputError("bin count must be positive");
  }
  if (angles.empty()) {
    throw InputError("cannot build a histogram from no angles");
  }
  if (!weights.empty() && weights.size() != angles.size()) {
    throw InputError("weights and angles differ in length");
  }
  // Total is accumulated in input order so a rotated input yields bit-identical bins.
  std::vector<double> sums(bin_count, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw InputError("histogram weight " + std::to_string(i) + " is negative or not finite");
    }
    sums[bin_index(angles[i], bin_count)] += w;
    total += w;
  }
  if (!(total > 0.0)) {
    throw InputError("histogram total weight is zero");
  }
  for (double& s : sums) {
    s /= total;
  }
  return AngularHistogram(std::move(sums), true);
}

AngularHistogram build_histogram(std::span<const Angle> angles, std::size_t bin_count) {
  return build_histogram(angles, {}, bin_count);
}

double histogram_lookup(const AngularHistogram& h, Angle a) noexcept {
  return h.values()[bin_index(a, h.bin_count())];
}

AngularHistogram uniform_histogram(std::size_t bin_count) {
  if (bin_count == 0) {
    throw InputError("bin count must be positive");
  }
  return AngularHistogram(std::vector<double>(bin_count, 1.0 / static_cast<double>(bin_count)), true);
}

}  // namespace rosefit
