#pragma once

// Query regions and their per-row horizontal extents.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gaia/grid.hpp"

namespace gaia {

struct Disc {
  Point center;
  double radius = 0.0;  // 0 is a point lookup
};

struct Rect {
  Point lo;
  Point hi;
};

/// Simple polygon, implicitly closed (last vertex connects to the first).
struct Polygon {
  std::vector<Point> vertices;
};

using GeoShape = std::variant<Disc, Rect, Polygon>;

/// Axis-aligned bounding box, inclusive on all sides.
struct Bounds {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
};

/// How much of a grid row a shape claims.
///  - Bounding: the shape's whole horizontal extent on every row.
///  - Tight: only the extent of the shape clipped to the row's y-band.
enum class SpanMode { Bounding, Tight };

struct RowRange {
  std::int64_t cy_lo = 0;
  std::int64_t cy_hi = 0;
};

struct Span {
  double x_lo = 0.0;
  double x_hi = 0.0;
};

/// Throws DomainError if the shape violates its own invariants (negative
/// radius, inverted rectangle, polygon with < 3 vertices or self-crossing).
void validate(const GeoShape& shape);

Bounds bounds_of(const GeoShape& shape);

/// Exact membership, boundary inclusive. Polygons use the even-odd rule.
bool contains(const GeoShape& shape, Point p);

/// Rows touched by the shape after clamping its y-extent to the world.
/// Throws EmptyIntersectionError if the bounding box misses the world.
RowRange row_range(const GeoShape& shape, const GridConfig& cfg);

/// Horizontal extent claimed on row cy, clamped to the world. Empty optional
/// when the shape has no extent inside the world on that row.
/// Throws DomainError when cy lies outside row_range(shape, cfg).
std::optional<Span> row_span(const GeoShape& shape, std::int64_t cy, const GridConfig& cfg,
                             SpanMode mode);

/// Shape literals: `disc:px,py,R`, `rect:x1,y1,x2,y2`, `poly:x1,y1;x2,y2;...`.
GeoShape parse_shape(std::string_view literal);
std::string format_shape(const GeoShape& shape);

SpanMode parse_span_mode(std::string_view name);
std::string_view to_string(SpanMode mode);

}  // namespace gaia
