#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rosefit {

/// What ols_fit does when the design (after dropping all-zero columns) is rank deficient.
enum class RankPolicy {
  Strict,       // throw NumericalError naming the dependent columns
  MinimumNorm,  // pseudo-inverse solution; confounded parameters are flagged inestimable
};

struct OlsOptions {
  RankPolicy rank_policy = RankPolicy::Strict;
  /// Relative pivot threshold of the rank-revealing decomposition.
  double rank_tolerance = 1e-10;
  /// Columns with max |x| at or below this (relative to max(1, max |X|)) carry
  /// no information; their coefficient is pinned to 0 and reported as inestimable.
  double null_column_tolerance = 1e-12;
};

/// OLS estimates with an intercept. Index 0 of every per-parameter vector is the
/// intercept ("gamma"); the rest follow the design-matrix columns in order.
/// Undefined statistics (zero standard error with zero coefficient, inestimable
/// columns) are NaN.
struct FitResult {
  std::vector<std::string> names;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> t_values;
  std::vector<double> p_values;
  std::vector<bool> estimable;
  double r_squared = 0.0;
  double f_statistic = 0.0;
  double prob_f = 1.0;
  double residual_variance = 0.0;
  std::size_t n_samples = 0;
  std::size_t rank = 0;          // of [1 X], intercept included
  std::size_t dof_model = 0;     // rank - 1
  std::size_t dof_residual = 0;  // n_samples - rank

  [[nodiscard]] double gamma() const { return coefficients.at(0); }
  [[nodiscard]] std::size_t parameter_count() const noexcept { return coefficients.size(); }
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
  /// Coefficient by name; throws std::out_of_range if absent.
  [[nodiscard]] double coefficient(std::string_view name) const;
  /// gamma + X * slopes
  [[nodiscard]] Eigen::VectorXd fitted(const Eigen::MatrixXd& x) const;
};

/// Least squares of y on [1 X] via a Householder complete orthogonal
/// decomposition (never the normal equations). Column names default to x1..xm.
///
/// Throws InsufficientDataError when N <= m + 1 and, under RankPolicy::Strict,
/// NumericalError naming the columns that depend on the others.
///
/// A constant y is degenerate: slopes are 0, gamma is the constant, and
/// R^2 = 0, F = 0, Prob(F) = 1.
FitResult ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  std::vector<std::string> names = {}, const OlsOptions& options = {});

/// mask[i] = p_values[i] < level; the intercept is always kept.
std::vector<bool> significance_mask(const FitResult& fit, double level);

}  // namespace rosefit
