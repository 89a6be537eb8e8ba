#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rosefit/circular.hpp"
#include "rosefit/features.hpp"
#include "rosefit/ingest.hpp"

namespace rosefit {

/// Ground truth for generating trips whose paces follow the regression model exactly (plus noise).
struct SyntheticScenario {
  ModelSpec spec;
  double true_gamma = 0.0;
  std::vector<double> true_alpha;  // spec.demand_column_count(), column order of ModelSpec
  std::vector<double> true_beta;   // spec.network_column_count()
  AngularHistogram demand_hist = uniform_histogram(32);
  AngularHistogram network_hist = uniform_histogram(32);
  std::size_t n_trips = 0;
  double noise_std = 0.0;
  std::uint64_t seed = 0;

  /// Throws InputError when shapes, normalization, symmetry or trip count are inconsistent.
  void validate() const;
  /// gamma, alpha..., beta... in design-matrix order.
  [[nodiscard]] std::vector<double> true_parameters() const;
};

/// Inverse-CDF draw of a bin, then a uniform position strictly inside it.
/// Trip i's draw depends only on (seed, i).
std::vector<Angle> sample_directions(const SyntheticScenario& scenario);

struct GeneratedPaces {
  std::vector<double> paces;
  std::size_t clamped = 0;  // paces raised to the 1 s/km floor
};

inline constexpr double kPaceFloor = 1.0;

/// gamma + features(theta_i) . truth + N(0, noise_std^2), floored at 1 s/km.
GeneratedPaces generate_paces(std::span<const Angle> directions, const SyntheticScenario& scenario);

/// Four equal peaks at rotation + m*pi/2, placed by bin arithmetic so point
/// symmetry is exact. Requires even B.
AngularHistogram make_rotated_grid_network(Angle rotation, std::size_t bin_count);

/// Planar trips (metres) with the given directions and paces: origins uniform
/// over a 10 km square, straight-line lengths uniform in [0.5, 5] km.
std::vector<TripRecord> synthesize_trips(std::span<const Angle> directions, std::span<const double> paces,
                                         std::uint64_t seed);

/// One primary-class segment per occupied bin in the first half circle,
/// oriented along the bin center, with length_m proportional to the bin's
/// mass. Reading it back length-weighted reproduces the histogram.
/// Requires a point-symmetric histogram.
std::vector<RoadSegment> synthesize_network(const AngularHistogram& network_hist);

}  // namespace rosefit
