#include "rosefit/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "rosefit/error.hpp"
#include "rosefit/features.hpp"
#include "rosefit/model.hpp"
#include "rosefit/report.hpp"
#include "rosefit/synth.hpp"

namespace rosefit {

namespace {

struct LoadedTrips {
  std::vector<TripSample> all;
  std::vector<TripSample> filtered;
};

std::ifstream open_input(const std::filesystem::path& path, const char* what) {
  if (path.empty()) throw InputError(std::string("no ") + what + " file given");
  std::ifstream in(path);
  if (!in) throw InputError(std::string("cannot read ") + what + " file " + path.string());
  return in;
}

LoadedTrips load_trips(const RunConfig& config, std::ostream& err) {
  auto in = open_input(config.trips_path, "trip");
  const TripParseResult parsed = parse_trips(in, config.coordinate_kind());
  for (const RowDiagnostic& d : parsed.rejected) {
    err << "warning: " << config.trips_path.string() << " row " << d.row << " rejected: " << d.message << '\n';
  }
  LoadedTrips out;
  std::size_t degenerate = 0;
  for (const TripRecord& t : parsed.trips) {
    if (t.origin == t.destination) {
      ++degenerate;
      continue;
    }
    out.all.push_back({pace(t), trip_direction(t, config.coordinate_kind(), config.convention())});
  }
  if (degenerate) {
    err << "warning: skipped " << degenerate << " degenerate trip(s) with coincident endpoints\n";
  }
  if (out.all.empty()) throw InputError("no trips");

  std::vector<std::pair<std::size_t, double>> paces;
  paces.reserve(out.all.size());
  for (std::size_t i = 0; i < out.all.size(); ++i) paces.emplace_back(i, out.all[i].pace);
  const auto kept = percentile_filter(paces, FilterPolicy{config.lower_cut, config.upper_cut});
  out.filtered.reserve(kept.size());
  for (std::size_t i : kept) out.filtered.push_back(out.all[i]);
  return out;
}

AngularHistogram demand_histogram(const RunConfig& config, const LoadedTrips& trips) {
  const auto& source = config.demand_from == DemandSource::AllTrips ? trips.all : trips.filtered;
  std::vector<Angle> directions;
  directions.reserve(source.size());
  for (const TripSample& s : source) directions.push_back(s.direction);
  return build_histogram(directions, config.bins);
}

AngularHistogram load_network_histogram(const RunConfig& config) {
  auto in = open_input(config.network_path, "network");
  const auto segments = parse_network(in, config.coordinate_kind(), config.class_filter);
  if (segments.empty()) throw InputError("no road segments in the selected classes");
  return network_histogram(segments, config.coordinate_kind(), config.bins, config.length_weighted,
                           config.convention());
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InsufficientDataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInsufficientData;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

void prepare_output_dir(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
}

}  // namespace

int cmd_hist(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedTrips trips = load_trips(config, err);
    const AngularHistogram d = demand_histogram(config, trips);
    const AngularHistogram n = load_network_histogram(config);
    prepare_output_dir(config.output_dir);
    const auto& dir = config.output_dir;
    const auto conv = config.convention();

    std::vector<double> mean_pace(config.bins, 0.0);
    std::vector<std::size_t> counts(config.bins, 0);
    for (const TripSample& s : trips.filtered) {
      const std::size_t i = bin_index(s.direction, config.bins);
      mean_pace[i] += s.pace;
      ++counts[i];
    }
    for (std::size_t i = 0; i < config.bins; ++i) {
      if (counts[i]) mean_pace[i] /= static_cast<double>(counts[i]);
    }

    write_file_atomic(dir / "demand_hist.csv", histogram_csv(d));
    write_file_atomic(dir / "network_hist.csv", histogram_csv(n));
    write_file_atomic(dir / "pace_by_direction.csv", pace_by_direction_csv(trips.filtered, config.bins));
    write_file_atomic(dir / "demand_rose.svg", rose_svg(d.values(), "demand d(theta)", conv));
    write_file_atomic(dir / "network_rose.svg", rose_svg(n.values(), "network n(theta)", conv));
    write_file_atomic(dir / "pace_rose.svg", rose_svg(mean_pace, "mean pace c(theta) [s/km]", conv));
    out << "trips: " << trips.all.size() << " (" << trips.filtered.size() << " after pace filter)\n"
        << "wrote histograms and rose diagrams to " << dir.string() << '\n';
    return kExitOk;
  });
}

int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ModelSpec spec;
    spec.harmonics = config.harmonics;
    spec.bins = config.bins;
    spec.network_point_symmetric = config.point_symmetric;
    spec.validate();

    const LoadedTrips trips = load_trips(config, err);
    const AngularHistogram d = demand_histogram(config, trips);
    const AngularHistogram n = load_network_histogram(config);
    const DesignMatrix dm = build_design_matrix(trips.filtered, d, n, spec);

    OlsOptions options;
    options.rank_policy = config.rank_policy;
    const FitResult fit = ols_fit(dm.x, dm.y, dm.names, options);

    std::vector<bool> mask;
    if (!config.no_mask) mask = significance_mask(fit, config.significance);
    InfluenceCurve alpha = reconstruct_curve(fit, mask, CurveKind::Alpha, config.grid_size);
    InfluenceCurve beta = reconstruct_curve(fit, mask, CurveKind::Beta, config.grid_size);
    const SignReport signs = expected_sign_report(alpha, beta);
    if (config.baseline_min) {
      alpha = subtract_minimum(std::move(alpha));
      beta = subtract_minimum(std::move(beta));
    }

    prepare_output_dir(config.output_dir);
    const auto& dir = config.output_dir;
    if (config.dump_design) write_file_atomic(dir / "design.csv", design_csv(dm));
    write_file_atomic(dir / "fit_report.csv", fit_report_csv(fit));
    const std::string summary = summary_text(fit);
    write_file_atomic(dir / "summary.txt", summary);
    write_file_atomic(dir / "alpha_curve.csv", curve_csv(alpha));
    write_file_atomic(dir / "beta_curve.csv", curve_csv(beta));
    write_file_atomic(dir / "alpha_curve.svg", curve_svg(alpha, "alpha(phi)"));
    write_file_atomic(dir / "beta_curve.svg", curve_svg(beta, "beta(eta)"));
    write_file_atomic(dir / "sign_report.txt", signs.to_text());
    write_file_atomic(dir / "model.json", model_json(SavedModel{spec, config.convention(), fit, d, n}));

    out << summary << signs.to_text();
    return kExitOk;
  });
}

int cmd_simulate(const RunConfig& config, const std::filesystem::path& scenario_path, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    SyntheticScenario scenario = parse_scenario_json(read_file(scenario_path));
    if (config.seed) scenario.seed = *config.seed;
    if (!scenario.spec.network_point_symmetric) {
      throw InputError("simulate writes a road network, whose orientation histogram is always "
                       "point-symmetric; set point_symmetric to true");
    }
    const auto directions = sample_directions(scenario);
    // Paces follow the demand histogram the fit will actually see: the one
    // built from the sampled directions.
    scenario.demand_hist = build_histogram(directions, scenario.spec.bins);
    const GeneratedPaces paces = generate_paces(directions, scenario);
    const auto trips = synthesize_trips(directions, paces.paces, scenario.seed);
    const auto segments = synthesize_network(scenario.network_hist);

    prepare_output_dir(config.output_dir);
    const auto& dir = config.output_dir;
    write_file_atomic(dir / "trips.csv", trips_csv(trips));
    write_file_atomic(dir / "network.csv", network_csv(segments));
    write_file_atomic(dir / "manifest.txt", scenario_manifest(scenario, paces.clamped));
    out << "wrote " << trips.size() << " trips (" << paces.clamped << " paces clamped) to " << dir.string()
        << '\n';
    return kExitOk;
  });
}

double parse_theta(const std::string& text, bool degrees) {
  std::string body = text;
  bool as_degrees = degrees;
  const auto ends_with = [&](std::string_view suffix) {
    return body.size() > suffix.size() && body.compare(body.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with("deg")) {
    body.resize(body.size() - 3);
    as_degrees = true;
  } else if (ends_with("rad")) {
    body.resize(body.size() - 3);
    as_degrees = false;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(body, &used);
  } catch (const std::exception&) {
    throw InputError("cannot parse direction '" + text + "'");
  }
  if (used != body.size() || !std::isfinite(v)) throw InputError("cannot parse direction '" + text + "'");
  return as_degrees ? v * std::numbers::pi / 180.0 : v;
}

int cmd_predict(const PredictRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SavedModel model = parse_model_json(read_file(request.model_path));
    if (request.harmonics && *request.harmonics != model.spec.harmonics) {
      throw NumericalError("spec mismatch: model has K=" + std::to_string(model.spec.harmonics));
    }
    if (request.bins && *request.bins != model.spec.bins) {
      throw NumericalError("spec mismatch: model has " + std::to_string(model.spec.bins) + " bins");
    }
    if (request.compass && (*request.compass != (model.convention == BearingConvention::Compass))) {
      throw NumericalError("spec mismatch: model uses the " + std::string(convention_label(model.convention)) +
                           " angle convention");
    }
    if (request.thetas.empty()) throw InputError("no directions given");
    std::vector<double> thetas;
    for (const auto& t : request.thetas) thetas.push_back(parse_theta(t, request.degrees));
    for (double t : thetas) {
      out << format_double(predict_pace(Angle(t), model.demand_hist, model.network_hist, model.fit, model.spec))
          << '\n';
    }
    return kExitOk;
  });
}

namespace {

void add_input_options(CLI::App& sub, RunConfig& c, std::string& classes) {
  sub.add_option("--trips", c.trips_path, "Trip CSV")->required();
  sub.add_option("--network", c.network_path, "Road network CSV")->required();
  sub.add_option("--bins", c.bins, "Histogram bin count")->capture_default_str()->check(CLI::Range(2, 100000));
  sub.add_option("--lower-cut", c.lower_cut, "Fraction of fastest paces dropped")->capture_default_str();
  sub.add_option("--upper-cut", c.upper_cut, "Fraction of slowest paces dropped")->capture_default_str();
  sub.add_option("--classes", classes, "Road classes kept, comma-separated")->capture_default_str();
  sub.add_flag("--length-weighted", c.length_weighted, "Weight network orientations by segment length");
  sub.add_flag("--compass", c.compass, "Measure directions as compass bearings (0 = north, clockwise)");
  sub.add_flag("--lonlat", c.lonlat, "Coordinates are lon/lat degrees");
  sub.add_option("--demand-from", c.demand_from, "Trips used for d(theta): all or filtered")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, DemandSource>{{"all", DemandSource::AllTrips},
                                              {"filtered", DemandSource::FilteredTrips}},
          CLI::ignore_case));
  sub.add_option("-o,--output-dir", c.output_dir, "Output directory")->capture_default_str();
}

std::set<RoadClass> parse_classes(const std::string& text) {
  std::set<RoadClass> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(parse_road_class(item));
  }
  if (out.empty()) throw InputError("no road classes selected");
  return out;
}

/// --config values go in front of the user's own arguments so flags win
/// (every option takes the last value given).
std::vector<std::string> expand_config(const std::vector<std::string>& args, const CLI::App& sub) {
  std::vector<std::string> out;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      ++i;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (path.empty()) return out;
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file " + path);
  std::vector<std::string> from_file;
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
    std::string key = item.name;
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = key.size() == 1 ? "-" + key : "--" + key;
    if (sub.get_option_no_throw(flag) == nullptr) {
      throw InputError("config file " + path + ": unknown key '" + item.name + "' for " + sub.get_name());
    }
    for (const auto& value : item.inputs) from_file.push_back(flag + "=" + value);
  }
  from_file.insert(from_file.end(), out.begin(), out.end());
  return from_file;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Directional congestion model: angular histograms, Fourier-feature regression, influence curves",
               "rosefit"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_flag("-h,--help", "Print this help message and exit");

  RunConfig config;
  std::string classes = "motorway,trunk,primary,secondary";
  std::string rank_policy = "strict";
  std::string baseline = "raw";

  auto* hist = app.add_subcommand("hist", "Write demand/network/pace histograms and rose diagrams");
  add_input_options(*hist, config, classes);

  auto* fit = app.add_subcommand("fit", "Estimate the Fourier-feature regression and influence curves");
  add_input_options(*fit, config, classes);
  fit->add_option("-K,--harmonics", config.harmonics, "Highest harmonic degree K")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000));
  fit->add_flag("--point-symmetric,!--no-point-symmetric", config.point_symmetric,
                "Keep only even network harmonics (default on)");
  fit->add_option("--significance", config.significance, "Level for masking curve terms")->capture_default_str();
  fit->add_flag("--no-mask", config.no_mask, "Reconstruct curves from all coefficients");
  fit->add_option("--baseline", baseline, "Curve baseline: raw or min")
      ->check(CLI::IsMember({"raw", "min"}))
      ->capture_default_str();
  fit->add_option("--grid-size", config.grid_size, "Points on each curve")->capture_default_str();
  fit->add_flag("--dump-design", config.dump_design, "Also write design.csv");
  fit->add_option("--rank-policy", rank_policy,
                  "strict: fail on dependent columns; min-norm: pseudo-inverse estimates")
      ->check(CLI::IsMember({"strict", "min-norm"}))
      ->capture_default_str();

  std::filesystem::path scenario_path;
  std::optional<std::uint64_t> seed_override;
  auto* simulate = app.add_subcommand("simulate", "Generate synthetic trips and network from a JSON scenario");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  simulate->add_option("-o,--output-dir", config.output_dir, "Output directory")->capture_default_str();
  simulate->add_option("--seed", seed_override, "Override the scenario seed");

  PredictRequest predict_request;
  int predict_k = 0;
  std::size_t predict_bins = 0;
  bool predict_compass = false;
  auto* predict = app.add_subcommand("predict", "Predict pace for directions from a fitted model.json");
  predict->add_option("--model", predict_request.model_path, "model.json written by fit")->required();
  predict->add_option("--theta,theta", predict_request.thetas, "Direction(s); suffix deg or rad allowed")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  predict->add_flag("--degrees", predict_request.degrees, "Bare numbers are degrees");
  auto* predict_k_opt = predict->add_option("-K,--harmonics", predict_k, "Expected K (checked against the model)");
  auto* predict_bins_opt = predict->add_option("--bins", predict_bins, "Expected bin count (checked)");
  auto* predict_compass_opt = predict->add_flag("--compass", predict_compass, "Directions are compass bearings");

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  try {
    if (!args.empty()) {
      if (CLI::App* sub = app.get_subcommand_no_throw(args.front())) {
        std::vector<std::string> rest(args.begin() + 1, args.end());
        rest = expand_config(rest, *sub);
        rest.insert(rest.begin(), args.front());
        args = std::move(rest);
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    config.class_filter = parse_classes(classes);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  config.rank_policy = rank_policy == "min-norm" ? RankPolicy::MinimumNorm : RankPolicy::Strict;
  config.baseline_min = baseline == "min";

  if (hist->parsed()) return cmd_hist(config, out, err);
  if (fit->parsed()) return cmd_fit(config, out, err);
  if (simulate->parsed()) {
    config.seed = seed_override;
    return cmd_simulate(config, scenario_path, out, err);
  }
  if (predict->parsed()) {
    if (predict_k_opt->count()) predict_request.harmonics = predict_k;
    if (predict_bins_opt->count()) predict_request.bins = predict_bins;
    if (predict_compass_opt->count()) predict_request.compass = predict_compass;
    return cmd_predict(predict_request, out, err);
  }
  return kExitInputError;
}

}  // namespace rosefit
