#include "rosefit/features.hpp"

#include <cmath>
#include <sstream>

#include "rosefit/error.hpp"

namespace rosefit {

namespace {

void require_normalized(const AngularHistogram& h, const char* what) {
  if (!h.normalized()) {
    throw InputError(std::string(what) + " histogram is not normalized");
  }
}

void append_harmonic_sums(Angle theta, const AngularHistogram& h, std::span<const int> degrees,
                          std::vector<double>& out) {
  const std::size_t b = h.bin_count();
  std::vector<double> offsets(b);
  for (std::size_t j = 0; j < b; ++j) {
    offsets[j] = angular_difference(bin_center(j, b), theta);
  }
  const auto values = h.values();
  for (int k : degrees) {
    double c = 0.0;
    double s = 0.0;
    for (std::size_t j = 0; j < b; ++j) {
      const double arg = k * offsets[j];
      c += values[j] * std::cos(arg);
      s += values[j] * std::sin(arg);
    }
    out.push_back(c);
    out.push_back(s);
  }
}

}  // namespace

void ModelSpec::validate() const {
  if (harmonics < 1) throw InputError("K must be at least 1");
  if (bins < 2) throw InputError("bin count must be at least 2");
  if (network_point_symmetric && bins % 2 != 0) {
    throw InputError("point-symmetric network needs an even bin count");
  }
  if (!include_intercept) throw InputError("models always include an intercept");
}

std::vector<int> ModelSpec::demand_degrees() const {
  std::vector<int> out;
  for (int k = 1; k <= harmonics; ++k) out.push_back(k);
  return out;
}

std::vector<int> ModelSpec::network_degrees() const {
  std::vector<int> out;
  for (int k = network_point_symmetric ? 2 : 1; k <= harmonics; k += network_point_symmetric ? 2 : 1) {
    out.push_back(k);
  }
  return out;
}

std::vector<std::string> ModelSpec::column_names() const {
  std::vector<std::string> names;
  for (int k : demand_degrees()) {
    names.push_back("a_c" + std::to_string(k));
    names.push_back("a_s" + std::to_string(k));
  }
  for (int k : network_degrees()) {
    names.push_back("b_c" + std::to_string(k));
    names.push_back("b_s" + std::to_string(k));
  }
  return names;
}

std::vector<double> demand_features(Angle theta, const AngularHistogram& d, int harmonics) {
  require_normalized(d, "demand");
  if (harmonics < 1) throw InputError("K must be at least 1");
  ModelSpec spec;
  spec.harmonics = harmonics;
  const auto degrees = spec.demand_degrees();
  std::vector<double> out;
  out.reserve(degrees.size() * 2);
  append_harmonic_sums(theta, d, degrees, out);
  return out;
}

void require_point_symmetric(const AngularHistogram& n, double tol) {
  const auto defect = n.point_symmetry_defect();
  if (!defect) {
    throw InputError("point symmetry needs an even bin count, got " + std::to_string(n.bin_count()));
  }
  if (defect->magnitude > tol) {
    std::ostringstream msg;
    msg << "network histogram is not point-symmetric: bins " << defect->bin << " and "
        << defect->bin + n.bin_count() / 2 << " differ by " << defect->magnitude;
    throw InputError(msg.str());
  }
}

std::vector<double> network_features(Angle theta, const AngularHistogram& n, int harmonics,
                                     bool point_symmetric) {
  require_normalized(n, "network");
  if (harmonics < 1) throw InputError("K must be at least 1");
  if (point_symmetric) require_point_symmetric(n);
  ModelSpec spec;
  spec.harmonics = harmonics;
  spec.network_point_symmetric = point_symmetric;
  const auto degrees = spec.network_degrees();
  std::vector<double> out;
  out.reserve(degrees.size() * 2);
  append_harmonic_sums(theta, n, degrees, out);
  return out;
}

DesignMatrix build_design_matrix(std::span<const TripSample> trips, const AngularHistogram& d,
                                 const AngularHistogram& n, const ModelSpec& spec) {
  spec.validate();
  if (d.bin_count() != spec.bins || n.bin_count() != spec.bins) {
    throw InputError("histogram bin count does not match the model's B");
  }
  if (trips.size() < spec.parameter_count()) {
    throw InsufficientDataError("underdetermined system: " + std::to_string(trips.size()) +
                                " samples for " + std::to_string(spec.parameter_count()) +
                                " parameters");
  }
  require_normalized(d, "demand");
  require_normalized(n, "network");
  if (spec.network_point_symmetric) require_point_symmetric(n);

  const auto demand_degrees = spec.demand_degrees();
  const auto network_degrees = spec.network_degrees();
  DesignMatrix dm;
  dm.x.resize(static_cast<Eigen::Index>(trips.size()), static_cast<Eigen::Index>(spec.regressor_count()));
  dm.y.resize(static_cast<Eigen::Index>(trips.size()));
  dm.names = spec.column_names();
  std::vector<double> row;
  for (std::size_t i = 0; i < trips.size(); ++i) {
    row.clear();
    append_harmonic_sums(trips[i].direction, d, demand_degrees, row);
    append_harmonic_sums(trips[i].direction, n, network_degrees, row);
    const auto r = static_cast<Eigen::Index>(i);
    for (std::size_t c = 0; c < row.size(); ++c) {
      dm.x(r, static_cast<Eigen::Index>(c)) = row[c];
    }
    dm.y(r) = trips[i].pace;
  }
  return dm;
}

}  // namespace rosefit
