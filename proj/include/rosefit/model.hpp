#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rosefit/circular.hpp"
#include "rosefit/estimator.hpp"
#include "rosefit/features.hpp"

namespace rosefit {

enum class CurveKind { Alpha, Beta };

/// One harmonic of an influence curve: cos_coef * cos(k x) + sin_coef * sin(k x).
struct Harmonic {
  int degree = 0;
  double cos_coef = 0.0;
  double sin_coef = 0.0;
};

/// alpha(phi) or beta(eta) sampled on offsets in [-pi, pi).
struct InfluenceCurve {
  CurveKind kind = CurveKind::Alpha;
  bool significance_filtered = false;
  std::vector<Harmonic> harmonics;  // the terms that survived the mask
  std::vector<double> grid;         // strictly increasing offsets
  std::vector<double> values;

  /// Exact series value at an arbitrary offset.
  [[nodiscard]] double value_at(double offset) const noexcept;
};

/// Uniform grid -pi + g * 2pi / size, g = 0..size-1.
std::vector<double> offset_grid(std::size_t size);

/// Sums the curve's own harmonics ("a_*" for alpha, "b_*" for beta) whose
/// mask entry is true; an empty mask keeps every term. Names that do not
/// belong to the curve are ignored. Throws InputError for grid_size < 8.
InfluenceCurve reconstruct_curve(std::span<const std::string> names, std::span<const double> coefficients,
                                 const std::vector<bool>& mask, CurveKind kind,
                                 std::size_t grid_size = 256);
InfluenceCurve reconstruct_curve(const FitResult& fit, const std::vector<bool>& mask, CurveKind kind,
                                 std::size_t grid_size = 256);

/// Curve shifted so its minimum over the grid is zero.
InfluenceCurve subtract_minimum(InfluenceCurve curve);

/// gamma + demand features . alpha + network features . beta, using every
/// fitted coefficient. Throws NumericalError if the fit's columns or the
/// histograms do not match spec.
double predict_pace(Angle theta, const AngularHistogram& d, const AngularHistogram& n,
                    const FitResult& fit, const ModelSpec& spec);

/// Checks alpha(0) > 0 and beta(0) < 0 and reports where each curve peaks.
/// Informational only.
struct SignReport {
  double alpha_at_zero = 0.0;
  double beta_at_zero = 0.0;
  std::string alpha_verdict;
  std::string beta_verdict;
  double alpha_argmax = 0.0;
  double alpha_argmin = 0.0;
  double beta_argmax = 0.0;
  double beta_argmin = 0.0;

  [[nodiscard]] std::string to_text() const;
};

SignReport expected_sign_report(const InfluenceCurve& alpha, const InfluenceCurve& beta);

}  // namespace rosefit
