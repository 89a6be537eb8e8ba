#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rosefit/circular.hpp"

namespace rosefit {

/// Shape of the regression: harmonics 1..K for demand; for the network either
/// all of them or, when the network histogram is point-symmetric, only even k.
struct ModelSpec {
  int harmonics = 8;          // K
  std::size_t bins = 32;      // B
  bool network_point_symmetric = true;
  bool include_intercept = true;

  /// Throws InputError on K < 1, B < 2, odd B with symmetry, or no intercept.
  void validate() const;

  [[nodiscard]] std::vector<int> demand_degrees() const;
  [[nodiscard]] std::vector<int> network_degrees() const;
  [[nodiscard]] std::size_t demand_column_count() const { return 2 * demand_degrees().size(); }
  [[nodiscard]] std::size_t network_column_count() const { return 2 * network_degrees().size(); }
  /// Regressor columns, intercept excluded.
  [[nodiscard]] std::size_t regressor_count() const {
    return demand_column_count() + network_column_count();
  }
  /// Regressors plus the intercept.
  [[nodiscard]] std::size_t parameter_count() const { return regressor_count() + 1; }

  /// a_c1, a_s1, ..., a_sK, then b_ck, b_sk for each network degree.
  [[nodiscard]] std::vector<std::string> column_names() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// For k = 1..K: (sum_j d_j cos k*phi_j, sum_j d_j sin k*phi_j), phi_j the
/// wrapped offset of bin j's center from theta. Summed in bin order.
std::vector<double> demand_features(Angle theta, const AngularHistogram& d, int harmonics);

/// Same sums over the network histogram. With point_symmetric only even k
/// are emitted, and the histogram must satisfy n[i] == n[i + B/2] within 1e-9.
std::vector<double> network_features(Angle theta, const AngularHistogram& n, int harmonics,
                                     bool point_symmetric);

/// Throws InputError naming the worst bin pair if n is not point-symmetric within tol.
void require_point_symmetric(const AngularHistogram& n, double tol = 1e-9);

struct TripSample {
  double pace = 0.0;
  Angle direction;
};

struct DesignMatrix {
  Eigen::MatrixXd x;               // N x (p - 1), no intercept column
  Eigen::VectorXd y;               // paces
  std::vector<std::string> names;  // column names of x
};

/// One row per trip: demand features followed by network features.
/// Throws InsufficientDataError when N < p.
DesignMatrix build_design_matrix(std::span<const TripSample> trips, const AngularHistogram& d,
                                 const AngularHistogram& n, const ModelSpec& spec);

}  // namespace rosefit
