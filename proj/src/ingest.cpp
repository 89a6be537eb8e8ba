#include "rosefit/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "rosefit/error.hpp"

namespace rosefit {

namespace {

constexpr double kEarthRadiusM = 6371008.8;
constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

/// Line reader that skips blank and `#` lines and tracks 1-based line numbers.
class CsvLines {
public:
  explicit CsvLines(std::istream& in) : in_(in) {}

  std::optional<std::vector<std::string_view>> next() {
    while (std::getline(in_, buffer_)) {
      ++line_;
      if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
      const std::string_view t = trim(buffer_);
      if (t.empty() || t.front() == '#') continue;
      return split(t);
    }
    return std::nullopt;
  }

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
};

double parse_field(std::string_view text, std::size_t row, std::string_view field) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InputError("row " + std::to_string(row) + ": field '" + std::string(field) +
                     "' is not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

bool header_matches(const std::vector<std::string_view>& got, std::span<const std::string_view> want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (lower(got[i]) != want[i]) return false;
  }
  return true;
}

std::string join(std::span<const std::string_view> names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  return out;
}

/// (dx, dy) in metres, east and north.
std::pair<double, double> displacement(Point a, Point b, CoordinateKind kind) {
  if (kind == CoordinateKind::Planar) {
    return {b.x - a.x, b.y - a.y};
  }
  const double mean_lat = 0.5 * (a.y + b.y) * kDegToRad;
  return {(b.x - a.x) * kDegToRad * std::cos(mean_lat) * kEarthRadiusM,
          (b.y - a.y) * kDegToRad * kEarthRadiusM};
}

Angle bearing(Point a, Point b, CoordinateKind kind) {
  if (kind == CoordinateKind::Planar) {
    return Angle(std::atan2(b.y - a.y, b.x - a.x));
  }
  const double mean_lat = 0.5 * (a.y + b.y) * kDegToRad;
  return Angle(std::atan2(b.y - a.y, (b.x - a.x) * std::cos(mean_lat)));
}

}  // namespace

RoadClass parse_road_class(std::string_view label) {
  const std::string l = lower(trim(label));
  if (l == "motorway") return RoadClass::Motorway;
  if (l == "trunk") return RoadClass::Trunk;
  if (l == "primary") return RoadClass::Primary;
  if (l == "secondary") return RoadClass::Secondary;
  if (l == "other") return RoadClass::Other;
  throw InputError("unknown road class '" + std::string(label) + "'");
}

std::string_view to_string(RoadClass c) noexcept {
  switch (c) {
    case RoadClass::Motorway: return "motorway";
    case RoadClass::Trunk: return "trunk";
    case RoadClass::Primary: return "primary";
    case RoadClass::Secondary: return "secondary";
    case RoadClass::Other: return "other";
  }
  return "other";
}

std::set<RoadClass> major_road_classes() {
  return {RoadClass::Motorway, RoadClass::Trunk, RoadClass::Primary, RoadClass::Secondary};
}

void FilterPolicy::validate() const {
  const auto in_range = [](double f) { return std::isfinite(f) && f >= 0.0 && f < 1.0; };
  if (!in_range(lower_fraction) || !in_range(upper_fraction) ||
      lower_fraction + upper_fraction >= 1.0) {
    throw InputError("filter fractions must lie in [0, 1) and sum to less than 1");
  }
}

TripParseResult parse_trips(std::istream& source, CoordinateKind kind) {
  static constexpr std::string_view planar[] = {"origin_x", "origin_y", "dest_x",
                                                "dest_y", "duration_s", "distance_km"};
  static constexpr std::string_view lonlat[] = {"origin_lon", "origin_lat", "dest_lon",
                                                "dest_lat", "duration_s", "distance_km"};
  const std::span<const std::string_view> want =
      kind == CoordinateKind::Planar ? std::span<const std::string_view>(planar)
                                     : std::span<const std::string_view>(lonlat);

  CsvLines lines(source);
  const auto header = lines.next();
  if (!header || !header_matches(*header, want)) {
    throw InputError("trip file header must be '" + join(want) + "'");
  }

  TripParseResult result;
  while (const auto fields = lines.next()) {
    const std::size_t row = lines.line();
    if (fields->size() != want.size()) {
      throw InputError("row " + std::to_string(row) + ": expected " + std::to_string(want.size()) +
                       " fields, found " + std::to_string(fields->size()));
    }
    double v[6];
    for (std::size_t i = 0; i < 6; ++i) {
      v[i] = parse_field((*fields)[i], row, want[i]);
    }
    if (kind == CoordinateKind::LonLat &&
        (std::abs(v[1]) > 90.0 || std::abs(v[3]) > 90.0)) {
      throw InputError("row " + std::to_string(row) + ": latitude outside [-90, 90]");
    }
    if (v[4] <= 0.0) {
      result.rejected.push_back({row, "duration_s must be positive"});
      continue;
    }
    if (v[5] <= 0.0) {
      result.rejected.push_back({row, "distance_km must be positive"});
      continue;
    }
    result.trips.push_back({{v[0], v[1]}, {v[2], v[3]}, v[4], v[5]});
  }
  return result;
}

std::vector<RoadSegment> parse_network(std::istream& source, CoordinateKind kind,
                                       const std::set<RoadClass>& class_filter) {
  static constexpr std::string_view base[] = {"ax", "ay", "bx", "by", "class"};
  static constexpr std::string_view with_length[] = {"ax", "ay", "bx", "by", "class", "length_m"};

  CsvLines lines(source);
  const auto header = lines.next();
  bool has_length = false;
  if (header && header_matches(*header, with_length)) {
    has_length = true;
  } else if (!header || !header_matches(*header, base)) {
    throw InputError("network file header must be 'ax,ay,bx,by,class[,length_m]'");
  }
  const std::span<const std::string_view> names =
      has_length ? std::span<const std::string_view>(with_length)
                 : std::span<const std::string_view>(base);

  std::vector<RoadSegment> segments;
  while (const auto fields = lines.next()) {
    const std::size_t row = lines.line();
    if (fields->size() != names.size()) {
      throw InputError("row " + std::to_string(row) + ": expected " + std::to_string(names.size()) +
                       " fields, found " + std::to_string(fields->size()));
    }
    RoadSegment s;
    s.a = {parse_field((*fields)[0], row, names[0]), parse_field((*fields)[1], row, names[1])};
    s.b = {parse_field((*fields)[2], row, names[2]), parse_field((*fields)[3], row, names[3])};
    try {
      s.road_class = parse_road_class((*fields)[4]);
    } catch (const InputError& e) {
      throw InputError("row " + std::to_string(row) + ": " + e.what());
    }
    if (has_length) {
      s.length_m = parse_field((*fields)[5], row, names[5]);
      if (s.length_m < 0.0) {
        throw InputError("row " + std::to_string(row) + ": length_m is negative");
      }
      if (s.a == s.b) s.length_m = 0.0;
    } else {
      s.length_m = segment_length_m(s.a, s.b, kind);
    }
    if (class_filter.contains(s.road_class)) {
      segments.push_back(s);
    }
  }
  return segments;
}

Angle to_convention(Angle math_angle, BearingConvention convention) {
  if (convention == BearingConvention::Math) return math_angle;
  return Angle(std::numbers::pi / 2.0 - math_angle.radians());
}

Angle trip_direction(const TripRecord& t, CoordinateKind kind, BearingConvention convention) {
  if (t.origin == t.destination) {
    throw InputError("degenerate trip");
  }
  return to_convention(bearing(t.origin, t.destination, kind), convention);
}

double pace(const TripRecord& t) {
  if (!(t.distance_km > 0.0)) {
    throw InputError("pace needs a positive distance");
  }
  return t.duration_s / t.distance_km;
}

std::vector<std::size_t> percentile_filter(std::span<const std::pair<std::size_t, double>> values,
                                           const FilterPolicy& policy) {
  policy.validate();
  if (values.empty()) {
    throw InputError("percentile filter needs at least one sample");
  }
  std::vector<std::pair<std::size_t, double>> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) {
    return l.second != r.second ? l.second < r.second : l.first < r.first;
  });
  // Guard against 0.1 * 20 landing a hair under 2 in binary.
  const auto n = static_cast<double>(sorted.size());
  const auto low = static_cast<std::size_t>(std::floor(policy.lower_fraction * n + 1e-9));
  const auto high = static_cast<std::size_t>(std::floor(policy.upper_fraction * n + 1e-9));
  if (low + high >= sorted.size()) {
    throw InputError("filter removed all samples");
  }
  std::vector<std::size_t> kept;
  kept.reserve(sorted.size() - low - high);
  for (std::size_t i = low; i < sorted.size() - high; ++i) {
    kept.push_back(sorted[i].first);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

double segment_length_m(Point a, Point b, CoordinateKind kind) {
  const auto [dx, dy] = displacement(a, b, kind);
  return std::hypot(dx, dy);
}

std::pair<Angle, Angle> segment_orientations(const RoadSegment& s, CoordinateKind kind,
                                             BearingConvention convention) {
  if (s.zero_length() || s.a == s.b) {
    throw InputError("zero-length segment has no orientation");
  }
  const Angle forward = to_convention(bearing(s.a, s.b, kind), convention);
  return {forward, Angle(forward.radians() + std::numbers::pi)};
}

AngularHistogram network_histogram(std::span<const RoadSegment> segments, CoordinateKind kind,
                                   std::size_t bin_count, bool length_weighted,
                                   BearingConvention convention) {
  if (bin_count == 0) {
    throw InputError("bin count must be positive");
  }
  // For even B the reverse direction is placed by bin arithmetic, so the
  // histogram is point-symmetric exactly rather than up to rounding at bin edges.
  const bool even = bin_count % 2 == 0;
  std::vector<double> sums(bin_count, 0.0);
  double total = 0.0;
  for (const RoadSegment& s : segments) {
    if (s.zero_length() || s.a == s.b) continue;
    const auto [forward, backward] = segment_orientations(s, kind, convention);
    const double w = length_weighted ? s.length_m : 1.0;
    const std::size_t i = bin_index(forward, bin_count);
    const std::size_t j = even ? (i + bin_count / 2) % bin_count : bin_index(backward, bin_count);
    sums[i] += w;
    sums[j] += w;
    total += 2.0 * w;
  }
  if (!(total > 0.0)) {
    throw InputError("no road segments with positive length");
  }
  for (double& v : sums) {
    v /= total;
  }
  return AngularHistogram(std::move(sums), true);
}

}  // namespace rosefit
