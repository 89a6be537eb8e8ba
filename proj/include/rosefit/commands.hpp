#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rosefit/estimator.hpp"
#include "rosefit/ingest.hpp"

namespace rosefit {

/// Process exit codes. Stable; documented in the README.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitInsufficientData = 3,
  kExitNumericalError = 4,
};

enum class DemandSource { AllTrips, FilteredTrips };

struct RunConfig {
  std::filesystem::path trips_path;
  std::filesystem::path network_path;
  int harmonics = 8;
  std::size_t bins = 32;
  double lower_cut = 0.05;
  double upper_cut = 0.10;
  std::set<RoadClass> class_filter = major_road_classes();
  bool point_symmetric = true;
  bool length_weighted = false;
  bool compass = false;
  bool lonlat = false;
  DemandSource demand_from = DemandSource::AllTrips;
  std::filesystem::path output_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the scenario's seed in simulate

  double significance = 0.05;
  bool no_mask = false;
  bool baseline_min = false;
  std::size_t grid_size = 256;
  bool dump_design = false;
  RankPolicy rank_policy = RankPolicy::Strict;

  [[nodiscard]] CoordinateKind coordinate_kind() const {
    return lonlat ? CoordinateKind::LonLat : CoordinateKind::Planar;
  }
  [[nodiscard]] BearingConvention convention() const {
    return compass ? BearingConvention::Compass : BearingConvention::Math;
  }
};

/// Histogram CSVs and rose diagrams for demand, network and pace-by-direction.
int cmd_hist(const RunConfig& config, std::ostream& out, std::ostream& err);
/// Fit report, summary, curves, model.json and the sign diagnostic.
int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err);
/// trips.csv, network.csv and manifest.txt for a JSON scenario.
int cmd_simulate(const RunConfig& config, const std::filesystem::path& scenario_path, std::ostream& out,
                 std::ostream& err);

struct PredictRequest {
  std::filesystem::path model_path;
  std::vector<std::string> thetas;
  bool degrees = false;
  std::optional<int> harmonics;     // set when the user passed --K
  std::optional<std::size_t> bins;  // set when the user passed --bins
  std::optional<bool> compass;      // set when the user passed --compass
};
/// One predicted pace per requested direction, in input order.
int cmd_predict(const PredictRequest& request, std::ostream& out, std::ostream& err);

/// Parses "1.5708", "90deg" or "1.5708rad". Bare numbers are degrees when
/// degrees is set, radians otherwise.
double parse_theta(const std::string& text, bool degrees);

/// Full command line: subcommands hist, fit, simulate, predict. Flags
/// override `--config` key=value files, which override defaults.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rosefit
