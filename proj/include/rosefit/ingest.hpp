#pragma once

#include <cstddef>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rosefit/circular.hpp"

namespace rosefit {

enum class CoordinateKind { Planar, LonLat };

/// Planar coordinates are (x, y) metres; for LonLat x is longitude and y latitude, degrees.
struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// How angles in the output are measured. Compass means 0 = north and clockwise.
enum class BearingConvention { Math, Compass };

struct TripRecord {
  Point origin;
  Point destination;
  double duration_s = 0.0;
  double distance_km = 0.0;
};

enum class RoadClass { Motorway, Trunk, Primary, Secondary, Other };

RoadClass parse_road_class(std::string_view label);
std::string_view to_string(RoadClass c) noexcept;
/// motorway, trunk, primary, secondary
std::set<RoadClass> major_road_classes();

struct RoadSegment {
  Point a;
  Point b;
  double length_m = 0.0;
  RoadClass road_class = RoadClass::Other;

  [[nodiscard]] bool zero_length() const noexcept { return length_m == 0.0; }
};

/// Fractions of samples trimmed from each end of the pace distribution.
struct FilterPolicy {
  double lower_fraction = 0.05;
  double upper_fraction = 0.10;

  /// Throws InputError unless both are in [0, 1) and their sum is below 1.
  void validate() const;
};

struct RowDiagnostic {
  std::size_t row;  // 1-based line number in the source
  std::string message;
};

struct TripParseResult {
  std::vector<TripRecord> trips;
  std::vector<RowDiagnostic> rejected;
};

/// Trip CSV reader. The header must be
/// `origin_x,origin_y,dest_x,dest_y,duration_s,distance_km` (planar) or
/// `origin_lon,origin_lat,dest_lon,dest_lat,duration_s,distance_km` (lon/lat).
/// Rows with non-positive duration or distance are skipped and listed in
/// `rejected`; unparseable rows throw InputError naming the row and field.
TripParseResult parse_trips(std::istream& source, CoordinateKind kind);

/// Network CSV reader, header `ax,ay,bx,by,class[,length_m]`. Only segments
/// whose class is in class_filter are returned.
std::vector<RoadSegment> parse_network(std::istream& source, CoordinateKind kind,
                                       const std::set<RoadClass>& class_filter);

/// Bearing origin->destination. Lon/lat uses an equirectangular projection
/// about the mean latitude. Throws InputError("degenerate trip") if the
/// endpoints coincide.
Angle trip_direction(const TripRecord& t, CoordinateKind kind,
                     BearingConvention convention = BearingConvention::Math);

/// Seconds per kilometre.
double pace(const TripRecord& t);

/// Indices kept after dropping floor(lower*N) slowest-first entries from the
/// low end and floor(upper*N) from the high end of the pace ordering. Ties
/// are ordered by original index. Result is sorted by index.
std::vector<std::size_t> percentile_filter(std::span<const std::pair<std::size_t, double>> values,
                                           const FilterPolicy& policy);

/// Orientation of a segment in both travel directions, {theta, theta + pi}.
std::pair<Angle, Angle> segment_orientations(const RoadSegment& s, CoordinateKind kind,
                                             BearingConvention convention = BearingConvention::Math);

/// Distance between two points in metres (equirectangular for lon/lat).
double segment_length_m(Point a, Point b, CoordinateKind kind);

/// Math-convention angle converted to the requested convention (the map is an involution).
Angle to_convention(Angle math_angle, BearingConvention convention);

/// n(theta) from segment orientations; zero-length segments are skipped.
/// Throws InputError if no usable segment remains.
AngularHistogram network_histogram(std::span<const RoadSegment> segments, CoordinateKind kind,
                                   std::size_t bin_count, bool length_weighted,
                                   BearingConvention convention = BearingConvention::Math);

}  // namespace rosefit
