#include "rosefit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rosefit/error.hpp"

namespace rosefit {

namespace {

enum Stream : std::uint64_t { kDirections = 1, kNoise = 2, kGeometry = 3 };

// Counter-based: each (seed, stream, index) gets an independently seeded engine,
// so generation order does not affect the values.
std::mt19937_64 engine_for(std::uint64_t seed, Stream stream, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
  return std::mt19937_64(seq);
}

double unit_uniform(std::mt19937_64& rng) {
  return std::generate_canonical<double, 53>(rng);
}

}  // namespace

void SyntheticScenario::validate() const {
  spec.validate();
  if (true_alpha.size() != spec.demand_column_count()) {
    throw InputError("scenario needs " + std::to_string(spec.demand_column_count()) + " alpha coefficients");
  }
  if (true_beta.size() != spec.network_column_count()) {
    throw InputError("scenario needs " + std::to_string(spec.network_column_count()) + " beta coefficients");
  }
  if (demand_hist.bin_count() != spec.bins || network_hist.bin_count() != spec.bins) {
    throw InputError("scenario histograms must have " + std::to_string(spec.bins) + " bins");
  }
  if (!demand_hist.normalized() || !network_hist.normalized()) {
    throw InputError("scenario histograms must be normalized");
  }
  if (spec.network_point_symmetric) require_point_symmetric(network_hist, 1e-12);
  if (n_trips <= spec.parameter_count()) {
    throw InputError("scenario needs more trips than parameters");
  }
  if (!std::isfinite(noise_std) || noise_std < 0.0) throw InputError("noise_std must be nonnegative");
  if (!std::isfinite(true_gamma)) throw InputError("gamma must be finite");
}

std::vector<double> SyntheticScenario::true_parameters() const {
  std::vector<double> out{true_gamma};
  out.insert(out.end(), true_alpha.begin(), true_alpha.end());
  out.insert(out.end(), true_beta.begin(), true_beta.end());
  return out;
}

std::vector<Angle> sample_directions(const SyntheticScenario& scenario) {
  const AngularHistogram& d = scenario.demand_hist;
  const std::size_t b = d.bin_count();
  std::vector<double> cdf(b);
  double running = 0.0;
  for (std::size_t j = 0; j < b; ++j) {
    running += d.values()[j];
    cdf[j] = running;
  }
  // Last occupied bin absorbs rounding so u < 1 always lands somewhere with mass.
  for (std::size_t j = b; j-- > 0;) {
    if (d.values()[j] > 0.0) {
      for (std::size_t k = j; k < b; ++k) cdf[k] = 1.0;
      break;
    }
  }
  const double width = d.bin_width();
  std::vector<Angle> out;
  out.reserve(scenario.n_trips);
  for (std::size_t i = 0; i < scenario.n_trips; ++i) {
    auto rng = engine_for(scenario.seed, kDirections, i);
    const double u = unit_uniform(rng);
    const auto bin = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    // Keep clear of the bin edges so a written-and-reread direction stays in its bin.
    const double jitter = 1e-6 + (1.0 - 2e-6) * unit_uniform(rng);
    out.emplace_back((static_cast<double>(std::min(bin, b - 1)) + jitter) * width);
  }
  return out;
}

GeneratedPaces generate_paces(std::span<const Angle> directions, const SyntheticScenario& scenario) {
  const ModelSpec& spec = scenario.spec;
  const auto truth = scenario.true_parameters();
  GeneratedPaces out;
  out.paces.reserve(directions.size());
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const auto demand = demand_features(directions[i], scenario.demand_hist, spec.harmonics);
    const auto network = network_features(directions[i], scenario.network_hist, spec.harmonics,
                                          spec.network_point_symmetric);
    double pace = truth[0];
    std::size_t c = 1;
    for (double f : demand) pace += f * truth[c++];
    for (double f : network) pace += f * truth[c++];
    if (scenario.noise_std > 0.0) {
      auto rng = engine_for(scenario.seed, kNoise, i);
      std::normal_distribution<double> noise(0.0, scenario.noise_std);
      pace += noise(rng);
    }
    if (pace < kPaceFloor) {
      pace = kPaceFloor;
      ++out.clamped;
    }
    out.paces.push_back(pace);
  }
  return out;
}

AngularHistogram make_rotated_grid_network(Angle rotation, std::size_t bin_count) {
  if (bin_count < 2 || bin_count % 2 != 0) {
    throw InputError("grid network needs an even bin count");
  }
  const std::size_t half = bin_count / 2;
  const std::size_t first = bin_index(rotation, bin_count);
  const std::size_t second = bin_index(Angle(rotation.radians() + std::numbers::pi / 2.0), bin_count);
  std::vector<double> values(bin_count, 0.0);
  for (std::size_t i : {first, second}) {
    values[i] += 0.25;
    values[(i + half) % bin_count] += 0.25;
  }
  return AngularHistogram(std::move(values), true);
}

std::vector<TripRecord> synthesize_trips(std::span<const Angle> directions, std::span<const double> paces,
                                         std::uint64_t seed) {
  if (directions.size() != paces.size()) {
    throw InputError("directions and paces differ in length");
  }
  std::vector<TripRecord> trips;
  trips.reserve(directions.size());
  for (std::size_t i = 0; i < directions.size(); ++i) {
    auto rng = engine_for(seed, kGeometry, i);
    const double ox = 10000.0 * unit_uniform(rng);
    const double oy = 10000.0 * unit_uniform(rng);
    const double km = 0.5 + 4.5 * unit_uniform(rng);
    const double theta = directions[i].radians();
    TripRecord t;
    t.origin = {ox, oy};
    t.destination = {ox + 1000.0 * km * std::cos(theta), oy + 1000.0 * km * std::sin(theta)};
    t.distance_km = km;
    t.duration_s = paces[i] * km;
    trips.push_back(t);
  }
  return trips;
}

std::vector<RoadSegment> synthesize_network(const AngularHistogram& network_hist) {
  require_point_symmetric(network_hist, 1e-12);
  const std::size_t half = network_hist.bin_count() / 2;
  std::vector<RoadSegment> segments;
  for (std::size_t j = 0; j < half; ++j) {
    const double mass = network_hist.values()[j];
    if (mass <= 0.0) continue;
    const double c = bin_center(j, network_hist.bin_count()).radians();
    RoadSegment s;
    s.a = {5000.0, 5000.0};
    s.b = {5000.0 + 100.0 * std::cos(c), 5000.0 + 100.0 * std::sin(c)};
    s.length_m = mass * 1.0e6;
    s.road_class = RoadClass::Primary;
    segments.push_back(s);
  }
  return segments;
}

}  // namespace rosefit
