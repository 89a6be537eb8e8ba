#include "rosefit/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "rosefit/error.hpp"

namespace rosefit {

namespace {

using nlohmann::json;

std::string svg_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

AngularHistogram histogram_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw InputError(std::string(what) + " must be a nonempty array");
  }
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw InputError(std::string(what) + " entries must be numbers");
    v.push_back(e.get<double>());
  }
  double total = 0.0;
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) throw InputError(std::string(what) + " entries must be nonnegative");
    total += x;
  }
  if (!(total > 0.0)) throw InputError(std::string(what) + " has zero mass");
  for (double& x : v) x /= total;
  return AngularHistogram(std::move(v), true);
}

std::vector<double> doubles_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> v;
  for (const auto& e : j) {
    if (e.is_null()) {
      v.push_back(std::numeric_limits<double>::quiet_NaN());
    } else if (e.is_number()) {
      v.push_back(e.get<double>());
    } else {
      throw InputError(std::string(what) + " entries must be numbers");
    }
  }
  return v;
}

json doubles_to_json(std::span<const double> v) {
  json out = json::array();
  for (double x : v) {
    if (std::isfinite(x)) {
      out.push_back(x);
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_fixed3(double v) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view convention_label(BearingConvention c) noexcept {
  return c == BearingConvention::Math ? "math (0 = east, counterclockwise)"
                                      : "compass (0 = north, clockwise)";
}

std::string histogram_csv(const AngularHistogram& h) {
  std::string out = "bin,lower_rad,upper_rad,center_rad,value\n";
  const double w = h.bin_width();
  for (std::size_t i = 0; i < h.bin_count(); ++i) {
    const double lo = static_cast<double>(i) * w;
    out += std::to_string(i) + ',' + format_double(lo) + ',' + format_double(lo + w) + ',' +
           format_double(bin_center(i, h.bin_count()).radians()) + ',' + format_double(h[i]) + '\n';
  }
  return out;
}

std::string pace_by_direction_csv(std::span<const TripSample> samples, std::size_t bin_count) {
  std::vector<double> sums(bin_count, 0.0);
  std::vector<std::size_t> counts(bin_count, 0);
  for (const TripSample& s : samples) {
    const std::size_t i = bin_index(s.direction, bin_count);
    sums[i] += s.pace;
    ++counts[i];
  }
  std::string out = "bin,center_rad,mean_pace_s_per_km,count\n";
  for (std::size_t i = 0; i < bin_count; ++i) {
    const double mean = counts[i] ? sums[i] / static_cast<double>(counts[i]) : 0.0;
    out += std::to_string(i) + ',' + format_double(bin_center(i, bin_count).radians()) + ',' +
           format_double(mean) + ',' + std::to_string(counts[i]) + '\n';
  }
  return out;
}

std::string design_csv(const DesignMatrix& dm) {
  std::string out;
  for (const auto& n : dm.names) out += n + ',';
  out += "pace\n";
  for (Eigen::Index r = 0; r < dm.x.rows(); ++r) {
    for (Eigen::Index c = 0; c < dm.x.cols(); ++c) {
      out += format_double(dm.x(r, c)) + ',';
    }
    out += format_double(dm.y(r)) + '\n';
  }
  return out;
}

std::string fit_report_csv(const FitResult& fit) {
  std::string out = "name,coefficient,std_err,t_value,p_value,significant_5pct\n";
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    // gamma is always kept for reconstruction; the column reports its actual test.
    const bool significant = fit.p_values[i] < 0.05;
    out += fit.names[i] + ',' + format_double(fit.coefficients[i]) + ',' + format_double(fit.std_errors[i]) +
           ',' + format_double(fit.t_values[i]) + ',' + format_double(fit.p_values[i]) + ',' +
           (significant ? "true" : "false") + '\n';
  }
  return out;
}

std::string summary_text(const FitResult& fit) {
  std::string out;
  out += "Number of samples: " + std::to_string(fit.n_samples) + '\n';
  out += "Parameters: " + std::to_string(fit.parameter_count()) + '\n';
  out += "Rank: " + std::to_string(fit.rank) + '\n';
  out += "R^2: " + format_fixed3(fit.r_squared) + '\n';
  out += "F-statistic: " + format_fixed3(fit.f_statistic) + '\n';
  out += "Prob(F-statistic): " + format_fixed3(fit.prob_f) + '\n';
  std::string inestimable;
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    if (!fit.estimable[i]) inestimable += (inestimable.empty() ? "" : ", ") + fit.names[i];
  }
  if (!inestimable.empty()) {
    out += "Inestimable parameters: " + inestimable + '\n';
  }
  return out;
}

std::string curve_csv(const InfluenceCurve& curve) {
  std::string out = "offset_rad,value\n";
  for (std::size_t g = 0; g < curve.grid.size(); ++g) {
    out += format_double(curve.grid[g]) + ',' + format_double(curve.values[g]) + '\n';
  }
  return out;
}

std::string rose_svg(std::span<const double> values, std::string_view title, BearingConvention convention) {
  constexpr double size = 400.0;
  constexpr double centre = size / 2.0;
  constexpr double radius = 180.0;
  const double peak = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  const double width = kTwoPi / static_cast<double>(values.size());

  // Screen y grows downward. Math angles run counterclockwise from east;
  // compass angles clockwise from north.
  const auto screen = [&](double angle, double r) {
    double x, y;
    if (convention == BearingConvention::Math) {
      x = centre + r * std::cos(angle);
      y = centre - r * std::sin(angle);
    } else {
      x = centre + r * std::sin(angle);
      y = centre - r * std::cos(angle);
    }
    return svg_number(x) + ',' + svg_number(y);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n"
      << "<title>" << svg_escape(title) << " [angle convention: " << convention_label(convention)
      << "; wedge area proportional to frequency]</title>\n"
      << "<circle cx=\"200\" cy=\"200\" r=\"180\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(peak > 0.0) || values[i] <= 0.0) continue;
    const double r = radius * std::sqrt(values[i] / peak);
    const double lo = static_cast<double>(i) * width;
    svg << "<path d=\"M " << svg_number(centre) << ',' << svg_number(centre) << " L " << screen(lo, r)
        << " A " << svg_number(r) << ',' << svg_number(r) << " 0 0 "
        << (convention == BearingConvention::Math ? 0 : 1) << ' ' << screen(lo + width, r)
        << " Z\" fill=\"#4477aa\" fill-opacity=\"0.8\" stroke=\"#223355\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string curve_svg(const InfluenceCurve& curve, std::string_view title) {
  constexpr double w = 480.0;
  constexpr double h = 300.0;
  constexpr double margin = 30.0;
  double lo = 0.0;
  double hi = 0.0;
  if (!curve.values.empty()) {
    lo = std::min(0.0, *std::min_element(curve.values.begin(), curve.values.end()));
    hi = std::max(0.0, *std::max_element(curve.values.begin(), curve.values.end()));
  }
  const double span = hi > lo ? hi - lo : 1.0;
  const auto sx = [&](double x) { return margin + (x + std::numbers::pi) / kTwoPi * (w - 2 * margin); };
  const auto sy = [&](double y) { return h - margin - (y - lo) / span * (h - 2 * margin); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"300\" viewBox=\"0 0 480 300\">\n"
      << "<title>" << svg_escape(title) << " [x: offset in radians over [-pi, pi)]</title>\n"
      << "<line x1=\"" << svg_number(margin) << "\" y1=\"" << svg_number(sy(0.0)) << "\" x2=\""
      << svg_number(w - margin) << "\" y2=\"" << svg_number(sy(0.0)) << "\" stroke=\"#bbbbbb\"/>\n"
      << "<polyline fill=\"none\" stroke=\"#aa3377\" stroke-width=\"1.5\" points=\"";
  for (std::size_t g = 0; g < curve.grid.size(); ++g) {
    if (g) svg << ' ';
    svg << svg_number(sx(curve.grid[g])) << ',' << svg_number(sy(curve.values[g]));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

std::string model_json(const SavedModel& model) {
  const FitResult& f = model.fit;
  json j;
  j["format"] = "rosefit-model";
  j["version"] = kModelSchemaVersion;
  j["spec"] = {{"K", model.spec.harmonics},
               {"bins", model.spec.bins},
               {"point_symmetric", model.spec.network_point_symmetric},
               {"include_intercept", model.spec.include_intercept}};
  j["convention"] = model.convention == BearingConvention::Math ? "math" : "compass";
  j["columns"] = f.names;
  j["coefficients"] = doubles_to_json(f.coefficients);
  j["std_errors"] = doubles_to_json(f.std_errors);
  j["p_values"] = doubles_to_json(f.p_values);
  j["demand_hist"] = doubles_to_json(model.demand_hist.values());
  j["network_hist"] = doubles_to_json(model.network_hist.values());
  j["statistics"] = {{"n_samples", f.n_samples},   {"rank", f.rank},
                     {"r_squared", f.r_squared},   {"f_statistic", std::isfinite(f.f_statistic) ? json(f.f_statistic) : json(nullptr)},
                     {"prob_f", f.prob_f},         {"dof_residual", f.dof_residual}};
  return j.dump(2) + '\n';
}

SavedModel parse_model_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format") != "rosefit-model") throw InputError("not a rosefit model file");
    if (j.at("version").get<int>() != kModelSchemaVersion) {
      throw InputError("unsupported model schema version " + j.at("version").dump());
    }
    SavedModel m;
    const auto& s = j.at("spec");
    m.spec.harmonics = s.at("K").get<int>();
    m.spec.bins = s.at("bins").get<std::size_t>();
    m.spec.network_point_symmetric = s.at("point_symmetric").get<bool>();
    m.spec.include_intercept = s.value("include_intercept", true);
    const std::string conv = j.value("convention", "math");
    if (conv != "math" && conv != "compass") throw InputError("unknown convention '" + conv + "'");
    m.convention = conv == "math" ? BearingConvention::Math : BearingConvention::Compass;
    m.fit.names = j.at("columns").get<std::vector<std::string>>();
    m.fit.coefficients = doubles_from_json(j.at("coefficients"), "coefficients");
    m.fit.std_errors = doubles_from_json(j.at("std_errors"), "std_errors");
    m.fit.p_values = doubles_from_json(j.at("p_values"), "p_values");
    const std::size_t p = m.fit.names.size();
    if (m.fit.coefficients.size() != p || m.fit.std_errors.size() != p || m.fit.p_values.size() != p) {
      throw InputError("model columns and coefficient arrays differ in length");
    }
    for (double c : m.fit.coefficients) {
      if (!std::isfinite(c)) throw InputError("model coefficients must be finite");
    }
    m.fit.t_values.resize(p);
    m.fit.estimable.assign(p, true);
    for (std::size_t i = 0; i < p; ++i) m.fit.t_values[i] = m.fit.coefficients[i] / m.fit.std_errors[i];
    m.demand_hist = histogram_from_json(j.at("demand_hist"), "demand_hist");
    m.network_hist = histogram_from_json(j.at("network_hist"), "network_hist");
    if (const auto st = j.find("statistics"); st != j.end()) {
      m.fit.n_samples = st->value("n_samples", std::size_t{0});
      m.fit.rank = st->value("rank", std::size_t{0});
      m.fit.r_squared = st->value("r_squared", 0.0);
      m.fit.prob_f = st->value("prob_f", 1.0);
      m.fit.dof_residual = st->value("dof_residual", std::size_t{0});
    }
    try {
      m.spec.validate();
    } catch (const InputError& e) {
      throw NumericalError(std::string("model spec is invalid: ") + e.what());
    }
    auto expected = m.spec.column_names();
    expected.insert(expected.begin(), "gamma");
    if (expected != m.fit.names) throw NumericalError("model columns do not match its spec");
    if (m.demand_hist.bin_count() != m.spec.bins || m.network_hist.bin_count() != m.spec.bins) {
      throw NumericalError("model histograms do not match its bin count");
    }
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model file: ") + e.what());
  }
}

SyntheticScenario parse_scenario_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    SyntheticScenario s;
    s.spec.harmonics = j.value("K", 8);
    s.spec.bins = j.value("bins", std::size_t{32});
    s.spec.network_point_symmetric = j.value("point_symmetric", true);
    s.spec.validate();
    s.true_gamma = j.at("gamma").get<double>();
    s.true_alpha = doubles_from_json(j.at("alpha"), "alpha");
    s.true_beta = doubles_from_json(j.at("beta"), "beta");
    s.demand_hist = histogram_from_json(j.at("demand_hist"), "demand_hist");
    if (j.contains("network_hist") == j.contains("network_grid_rotation")) {
      throw InputError("scenario needs exactly one of network_hist or network_grid_rotation");
    }
    if (j.contains("network_hist")) {
      s.network_hist = histogram_from_json(j.at("network_hist"), "network_hist");
    } else {
      s.network_hist = make_rotated_grid_network(Angle(j.at("network_grid_rotation").get<double>()), s.spec.bins);
    }
    s.n_trips = j.at("n_trips").get<std::size_t>();
    s.noise_std = j.value("noise_std", 0.0);
    s.seed = j.value("seed", std::uint64_t{0});
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed scenario: ") + e.what());
  }
}

std::string scenario_manifest(const SyntheticScenario& s, std::size_t clamped) {
  std::string out = "# synthetic scenario manifest\n";
  out += "K=" + std::to_string(s.spec.harmonics) + '\n';
  out += "bins=" + std::to_string(s.spec.bins) + '\n';
  out += std::string("point_symmetric=") + (s.spec.network_point_symmetric ? "true" : "false") + '\n';
  out += "seed=" + std::to_string(s.seed) + '\n';
  out += "n_trips=" + std::to_string(s.n_trips) + '\n';
  out += "noise_std=" + format_double(s.noise_std) + '\n';
  out += "clamped_paces=" + std::to_string(clamped) + '\n';
  const auto params = s.true_parameters();
  auto names = s.spec.column_names();
  names.insert(names.begin(), "gamma");
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += "true." + names[i] + '=' + format_double(params[i]) + '\n';
  }
  const auto join = [](std::span<const double> v) {
    std::string r;
    for (std::size_t i = 0; i < v.size(); ++i) r += (i ? "," : "") + format_double(v[i]);
    return r;
  };
  out += "demand_hist=" + join(s.demand_hist.values()) + '\n';
  out += "network_hist=" + join(s.network_hist.values()) + '\n';
  out += "# network.csv encodes network_hist in length_m; fit with --length-weighted\n";
  return out;
}

std::string trips_csv(std::span<const TripRecord> trips) {
  std::string out = "origin_x,origin_y,dest_x,dest_y,duration_s,distance_km\n";
  for (const TripRecord& t : trips) {
    out += format_double(t.origin.x) + ',' + format_double(t.origin.y) + ',' + format_double(t.destination.x) +
           ',' + format_double(t.destination.y) + ',' + format_double(t.duration_s) + ',' +
           format_double(t.distance_km) + '\n';
  }
  return out;
}

std::string network_csv(std::span<const RoadSegment> segments) {
  std::string out = "ax,ay,bx,by,class,length_m\n";
  for (const RoadSegment& s : segments) {
    out += format_double(s.a.x) + ',' + format_double(s.a.y) + ',' + format_double(s.b.x) + ',' +
           format_double(s.b.y) + ',' + std::string(to_string(s.road_class)) + ',' + format_double(s.length_m) +
           '\n';
  }
  return out;
}

}  // namespace rosefit
