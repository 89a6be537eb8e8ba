#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "rosefit/circular.hpp"
#include "rosefit/estimator.hpp"
#include "rosefit/features.hpp"
#include "rosefit/ingest.hpp"
#include "rosefit/model.hpp"
#include "rosefit/synth.hpp"

namespace rosefit {

/// Shortest decimal that round-trips to the same double; "nan", "inf", "-inf" otherwise.
std::string format_double(double v);
/// Fixed three decimals, matching the precision of published fit summaries.
std::string format_fixed3(double v);

/// Writes to a sibling temp file, then renames over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

std::string_view convention_label(BearingConvention c) noexcept;

// CSV writers -------------------------------------------------------------

/// bin,lower_rad,upper_rad,center_rad,value
std::string histogram_csv(const AngularHistogram& h);
/// bin,center_rad,mean_pace_s_per_km,count ; empty bins report mean 0
std::string pace_by_direction_csv(std::span<const TripSample> samples, std::size_t bin_count);
/// a_c1,...,b_sK,pace
std::string design_csv(const DesignMatrix& dm);
/// name,coefficient,std_err,t_value,p_value,significant_5pct
std::string fit_report_csv(const FitResult& fit);
/// Sample count, R^2, F-statistic and Prob(F) at three decimals.
std::string summary_text(const FitResult& fit);
/// offset_rad,value
std::string curve_csv(const InfluenceCurve& curve);

// SVG ---------------------------------------------------------------------

/// Polar histogram; wedge area is proportional to the bin value.
std::string rose_svg(std::span<const double> values, std::string_view title, BearingConvention convention);
/// Line plot of an influence curve over [-pi, pi).
std::string curve_svg(const InfluenceCurve& curve, std::string_view title);

// Persisted model -----------------------------------------------------------

inline constexpr int kModelSchemaVersion = 1;

struct SavedModel {
  ModelSpec spec;
  BearingConvention convention = BearingConvention::Math;
  FitResult fit;
  AngularHistogram demand_hist = uniform_histogram(32);
  AngularHistogram network_hist = uniform_histogram(32);
};

/// Versioned JSON document: format, version, spec, convention, columns,
/// coefficients, std_errors, p_values, demand_hist, network_hist, statistics.
std::string model_json(const SavedModel& model);
/// Throws InputError for malformed documents and NumericalError for an
/// inconsistent spec/column layout.
SavedModel parse_model_json(std::string_view text);

// Scenario ----------------------------------------------------------------

/// JSON scenario: K, bins, point_symmetric, gamma, alpha[], beta[],
/// demand_hist[] (nonnegative weights, normalized on load), either
/// network_hist[] or network_grid_rotation (radians), n_trips, noise_std, seed.
SyntheticScenario parse_scenario_json(std::string_view text);

/// key=value text recording spec, seed, true parameters and histograms.
std::string scenario_manifest(const SyntheticScenario& scenario, std::size_t clamped);

// Trip / network CSV writers in the ingest format --------------------------

std::string trips_csv(std::span<const TripRecord> trips);
std::string network_csv(std::span<const RoadSegment> segments);

}  // namespace rosefit
