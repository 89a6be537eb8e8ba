#include "rosefit/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rosefit/error.hpp"
#include "rosefit/special_functions.hpp"

namespace rosefit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEstimableTolerance = 1e-8;

}  // namespace

std::optional<std::size_t> FitResult::index_of(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

double FitResult::coefficient(std::string_view name) const {
  const auto i = index_of(name);
  if (!i) throw std::out_of_range("no coefficient named " + std::string(name));
  return coefficients[*i];
}

Eigen::VectorXd FitResult::fitted(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.cols()) + 1 != coefficients.size()) {
    throw NumericalError("design matrix has " + std::to_string(x.cols()) + " columns, fit has " +
                         std::to_string(coefficients.size() - 1) + " slopes");
  }
  const Eigen::Map<const Eigen::VectorXd> slopes(coefficients.data() + 1, x.cols());
  return (x * slopes).array() + coefficients[0];
}

FitResult ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::vector<std::string> names,
                  const OlsOptions& options) {
  const auto n = static_cast<std::size_t>(x.rows());
  const auto m = static_cast<std::size_t>(x.cols());
  if (static_cast<std::size_t>(y.size()) != n) {
    throw InputError("design matrix and response differ in length");
  }
  if (n <= m + 1) {
    throw InsufficientDataError("underdetermined system: " + std::to_string(n) + " samples for " +
                                std::to_string(m + 1) + " parameters");
  }
  if (!x.allFinite() || !y.allFinite()) {
    throw InputError("design matrix or response contains non-finite values");
  }
  if (names.empty()) {
    for (std::size_t j = 0; j < m; ++j) names.push_back("x" + std::to_string(j + 1));
  }
  if (names.size() != m) {
    throw InputError("column name count does not match the design matrix");
  }

  FitResult fit;
  fit.n_samples = n;
  fit.names.reserve(m + 1);
  fit.names.push_back("gamma");
  fit.names.insert(fit.names.end(), names.begin(), names.end());
  fit.coefficients.assign(m + 1, 0.0);
  fit.std_errors.assign(m + 1, kNaN);
  fit.t_values.assign(m + 1, kNaN);
  fit.p_values.assign(m + 1, kNaN);
  fit.estimable.assign(m + 1, false);

  // Active parameters: intercept plus every column with any signal.
  const double scale = std::max(1.0, x.size() ? x.cwiseAbs().maxCoeff() : 0.0);
  std::vector<std::size_t> active{0};
  for (std::size_t j = 0; j < m; ++j) {
    if (x.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff() > options.null_column_tolerance * scale) {
      active.push_back(j + 1);
    }
  }
  const auto p = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), p);
  a.col(0).setOnes();
  for (Eigen::Index c = 1; c < p; ++c) {
    a.col(c) = x.col(static_cast<Eigen::Index>(active[static_cast<std::size_t>(c)] - 1));
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(options.rank_tolerance);
  cod.compute(a);
  const auto rank = static_cast<std::size_t>(cod.rank());
  if (rank < active.size() && options.rank_policy == RankPolicy::Strict) {
    std::string dependent;
    const auto& perm = cod.colsPermutation().indices();
    for (Eigen::Index i = static_cast<Eigen::Index>(rank); i < p; ++i) {
      if (!dependent.empty()) dependent += ", ";
      dependent += fit.names[active[static_cast<std::size_t>(perm(i))]];
    }
    throw NumericalError("rank-deficient design (rank " + std::to_string(rank) + " of " +
                         std::to_string(active.size()) + "); linearly dependent columns: " +
                         dependent);
  }

  const double mean = y.mean();
  const bool constant_y = (y.array() == y(0)).all();
  Eigen::VectorXd beta;
  if (constant_y) {
    beta = Eigen::VectorXd::Zero(p);
    beta(0) = y(0);
  } else {
    beta = cod.solve(y);
  }
  const Eigen::VectorXd residual = y - a * beta;
  const double rss = residual.squaredNorm();
  const double tss = constant_y ? 0.0 : (y.array() - mean).matrix().squaredNorm();

  fit.rank = rank;
  fit.dof_model = rank - 1;
  fit.dof_residual = n - rank;
  fit.residual_variance = rss / static_cast<double>(fit.dof_residual);

  // A P = Q [T 0; 0 0] Z, so pinv(A) = P Zr' inv(T) Qr' with Zr the leading
  // rank rows of Z. Both products below stay p x p.
  const auto r = static_cast<Eigen::Index>(rank);
  // Z is the identity at full rank; matrixZ() is not reliable there.
  const Eigen::MatrixXd z = r == p ? Eigen::MatrixXd::Identity(p, p) : cod.matrixZ();
  const Eigen::MatrixXd basis = cod.colsPermutation() * z.topRows(r).transpose();  // p x r
  const Eigen::MatrixXd scaled = cod.matrixT()
                                     .topLeftCorner(r, r)
                                     .triangularView<Eigen::Upper>()
                                     .transpose()
                                     .solve(basis.transpose());  // r x p, columns are rows of pinv(A) Q
  for (Eigen::Index c = 0; c < p; ++c) {
    const std::size_t i = active[static_cast<std::size_t>(c)];
    fit.coefficients[i] = beta(c);
    const double var = fit.residual_variance * scaled.col(c).squaredNorm();
    fit.std_errors[i] = std::sqrt(var);
    // pinv(A) A = basis basis' must fix the unit vector e_c.
    Eigen::VectorXd moved = basis * basis.row(c).transpose();
    moved(c) -= 1.0;
    fit.estimable[i] = moved.norm() < kEstimableTolerance;
    if (fit.std_errors[i] > 0.0) {
      fit.t_values[i] = beta(c) / fit.std_errors[i];
    } else if (beta(c) != 0.0) {
      fit.t_values[i] = std::copysign(std::numeric_limits<double>::infinity(), beta(c));
    }
    fit.p_values[i] = t_p_value(fit.t_values[i], static_cast<double>(fit.dof_residual));
  }

  if (tss <= 0.0) {
    fit.r_squared = 0.0;
    fit.f_statistic = 0.0;
    fit.prob_f = 1.0;
  } else {
    fit.r_squared = std::clamp(1.0 - rss / tss, 0.0, 1.0);
    if (fit.dof_model == 0) {
      fit.f_statistic = 0.0;
      fit.prob_f = 1.0;
    } else if (fit.r_squared >= 1.0) {
      fit.f_statistic = std::numeric_limits<double>::infinity();
      fit.prob_f = 0.0;
    } else {
      fit.f_statistic = (fit.r_squared / static_cast<double>(fit.dof_model)) /
                        ((1.0 - fit.r_squared) / static_cast<double>(fit.dof_residual));
      fit.prob_f = f_p_value(fit.f_statistic, static_cast<double>(fit.dof_model),
                             static_cast<double>(fit.dof_residual));
    }
  }
  return fit;
}

std::vector<bool> significance_mask(const FitResult& fit, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw InputError("significance level must lie in (0, 1)");
  }
  std::vector<bool> mask(fit.p_values.size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = fit.p_values[i] < level;  // NaN compares false
  }
  if (!mask.empty()) mask[0] = true;
  return mask;
}

}  // namespace rosefit
