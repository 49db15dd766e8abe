#include "gaia/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gaia/errors.hpp"
#include "gaia/text_io.hpp"

namespace gaia {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(Point a, Point b, Point p) {
  if (cross(a, b, p) != 0.0) return false;
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) && p.y >= std::min(a.y, b.y) &&
         p.y <= std::max(a.y, b.y);
}

int orientation(Point a, Point b, Point c) {
  const double v = cross(a, b, c);
  return (v > 0.0) - (v < 0.0);
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

void validate_polygon(const Polygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  if (n < 3) throw DomainError("polygon needs at least 3 vertices");
  for (const auto& p : v) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DomainError("polygon vertices must be finite");
    }
  }
  double twice_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % n];
    twice_area += a.x * b.y - b.x * a.y;
    if (a == b) throw DomainError("polygon has a repeated consecutive vertex");
  }
  if (twice_area == 0.0) throw DomainError("polygon has zero area");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Edges sharing a vertex are adjacent; only non-adjacent pairs may not meet.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
        throw DomainError("polygon is self-intersecting");
      }
    }
  }
}

// Closed y-band of grid row cy.
std::pair<double, double> band_of_row(std::int64_t cy, const GridConfig& cfg) {
  const double c = cfg.cell_side();
  const double y0 = cfg.min_h() + static_cast<double>(cy) * c;
  double y1 = y0 + c;
  if (cy == cfg.rows() - 1) y1 = std::max(y1, cfg.max_h());
  return {y0, y1};
}

std::optional<Span> tight_polygon_span(const Polygon& poly, double y0, double y1) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point a = v[i];
    Point b = v[(i + 1) % n];
    if (a.y > b.y) std::swap(a, b);
    if (b.y < y0 || a.y > y1) continue;
    if (a.y == b.y) {
      lo = std::min({lo, a.x, b.x});
      hi = std::max({hi, a.x, b.x});
      continue;
    }
    // Clip the edge to the band and take the x of both clipped endpoints.
    const double slope = (b.x - a.x) / (b.y - a.y);
    const double ya = std::max(a.y, y0);
    const double yb = std::min(b.y, y1);
    const double xa = ya == a.y ? a.x : a.x + (ya - a.y) * slope;
    const double xb = yb == b.y ? b.x : a.x + (yb - a.y) * slope;
    lo = std::min({lo, xa, xb});
    hi = std::max({hi, xa, xb});
  }
  if (lo > hi) return std::nullopt;
  return Span{lo, hi};
}

}  // namespace

void validate(const GeoShape& shape) {
  std::visit(overloaded{
                 [](const Disc& d) {
                   if (!std::isfinite(d.center.x) || !std::isfinite(d.center.y) ||
                       !std::isfinite(d.radius)) {
                     throw DomainError("disc parameters must be finite");
                   }
                   if (d.radius < 0.0) throw DomainError("disc radius must be >= 0");
                 },
                 [](const Rect& r) {
                   if (!std::isfinite(r.lo.x) || !std::isfinite(r.lo.y) ||
                       !std::isfinite(r.hi.x) || !std::isfinite(r.hi.y)) {
                     throw DomainError("rect corners must be finite");
                   }
                   if (!(r.lo.x < r.hi.x) || !(r.lo.y < r.hi.y)) {
                     throw DomainError("rect requires lo.x < hi.x and lo.y < hi.y");
                   }
                 },
                 [](const Polygon& p) { validate_polygon(p); },
             },
             shape);
}

Bounds bounds_of(const GeoShape& shape) {
  return std::visit(
      overloaded{
          [](const Disc& d) {
            return Bounds{d.center.x - d.radius, d.center.x + d.radius, d.center.y - d.radius,
                          d.center.y + d.radius};
          },
          [](const Rect& r) { return Bounds{r.lo.x, r.hi.x, r.lo.y, r.hi.y}; },
          [](const Polygon& p) {
            Bounds b{std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()};
            for (const auto& v : p.vertices) {
              b.x_lo = std::min(b.x_lo, v.x);
              b.x_hi = std::max(b.x_hi, v.x);
              b.y_lo = std::min(b.y_lo, v.y);
              b.y_hi = std::max(b.y_hi, v.y);
            }
            return b;
          },
      },
      shape);
}

bool contains(const GeoShape& shape, Point p) {
  return std::visit(overloaded{
                        [p](const Disc& d) {
                          const double dx = p.x - d.center.x;
                          const double dy = p.y - d.center.y;
                          return dx * dx + dy * dy <= d.radius * d.radius;
                        },
                        [p](const Rect& r) {
                          return p.x >= r.lo.x && p.x <= r.hi.x && p.y >= r.lo.y &&
                                 p.y <= r.hi.y;
                        },
                        [p](const Polygon& poly) {
                          const auto& v = poly.vertices;
                          const std::size_t n = v.size();
                          bool inside = false;
                          for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
                            const Point a = v[i];
                            const Point b = v[j];
                            if (on_segment(a, b, p)) return true;
                            if ((a.y > p.y) != (b.y > p.y)) {
                              const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                              if (p.x < x_cross) inside = !inside;
                            }
                          }
                          return inside;
                        },
                    },
                    shape);
}

RowRange row_range(const GeoShape& shape, const GridConfig& cfg) {
  const Bounds b = bounds_of(shape);
  if (b.x_hi < cfg.min_d() || b.x_lo > cfg.max_d() || b.y_hi < cfg.min_h() ||
      b.y_lo > cfg.max_h()) {
    throw EmptyIntersectionError("shape " + format_shape(shape) + " does not intersect the world");
  }
  return {cfg.row_of(std::max(cfg.min_h(), b.y_lo)), cfg.row_of(std::min(cfg.max_h(), b.y_hi))};
}

std::optional<Span> row_span(const GeoShape& shape, std::int64_t cy, const GridConfig& cfg,
                             SpanMode mode) {
  const RowRange rr = row_range(shape, cfg);
  if (cy < rr.cy_lo || cy > rr.cy_hi) {
    throw DomainError("row " + std::to_string(cy) + " outside the shape's rows [" +
                      std::to_string(rr.cy_lo) + ", " + std::to_string(rr.cy_hi) + "]");
  }

  std::optional<Span> span;
  if (mode == SpanMode::Bounding) {
    const Bounds b = bounds_of(shape);
    span = Span{b.x_lo, b.x_hi};
  } else {
    const auto [y0, y1] = band_of_row(cy, cfg);
    span = std::visit(
        overloaded{
            [&](const Disc& d) -> std::optional<Span> {
              const double py = d.center.y;
              const double dy = py < y0 ? y0 - py : (py > y1 ? py - y1 : 0.0);
              if (dy > d.radius) return std::nullopt;
              const double w = std::sqrt(d.radius * d.radius - dy * dy);
              return Span{d.center.x - w, d.center.x + w};
            },
            [&](const Rect& r) -> std::optional<Span> {
              if (r.hi.y < y0 || r.lo.y > y1) return std::nullopt;
              return Span{r.lo.x, r.hi.x};
            },
            [&](const Polygon& p) { return tight_polygon_span(p, y0, y1); },
        },
        shape);
  }
  if (!span) return std::nullopt;
  span->x_lo = std::max(span->x_lo, cfg.min_d());
  span->x_hi = std::min(span->x_hi, cfg.max_d());
  if (span->x_lo > span->x_hi) return std::nullopt;
  return span;
}

GeoShape parse_shape(std::string_view literal) {
  literal = text::trim(literal);
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("shape literal '" + std::string(literal) + "' lacks a kind prefix");
  }
  const auto kind = literal.substr(0, colon);
  const auto body = literal.substr(colon + 1);

  auto numbers = [&](std::string_view s, std::size_t expected) {
    const auto parts = text::split(s, ',');
    if (parts.size() != expected) {
      throw ParseError("shape literal '" + std::string(literal) + "': expected " +
                       std::to_string(expected) + " numbers");
    }
    std::vector<double> out;
    for (auto part : parts) out.push_back(text::parse_double(part));
    return out;
  };

  GeoShape shape;
  if (kind == "disc") {
    const auto v = numbers(body, 3);
    shape = Disc{{v[0], v[1]}, v[2]};
  } else if (kind == "rect") {
    const auto v = numbers(body, 4);
    shape = Rect{{std::min(v[0], v[2]), std::min(v[1], v[3])},
                 {std::max(v[0], v[2]), std::max(v[1], v[3])}};
  } else if (kind == "poly") {
    Polygon poly;
    for (auto vertex : text::split(body, ';')) {
      if (text::trim(vertex).empty()) continue;
      const auto v = numbers(vertex, 2);
      poly.vertices.push_back({v[0], v[1]});
    }
    shape = std::move(poly);
  } else {
    throw ParseError("unknown shape kind '" + std::string(kind) + "'");
  }
  try {
    validate(shape);
  } catch (const DomainError& e) {
    throw ParseError("shape literal '" + std::string(literal) + "': " + e.what());
  }
  return shape;
}

std::string format_shape(const GeoShape& shape) {
  using text::format_double;
  return std::visit(
      overloaded{
          [](const Disc& d) {
            return "disc:" + format_double(d.center.x) + "," + format_double(d.center.y) + "," +
                   format_double(d.radius);
          },
          [](const Rect& r) {
            return "rect:" + format_double(r.lo.x) + "," + format_double(r.lo.y) + "," +
                   format_double(r.hi.x) + "," + format_double(r.hi.y);
          },
          [](const Polygon& p) {
            std::string out = "poly:";
            for (std::size_t i = 0; i < p.vertices.size(); ++i) {
              if (i > 0) out += ';';
              out += format_double(p.vertices[i].x) + "," + format_double(p.vertices[i].y);
            }
            return out;
          },
      },
      shape);
}

SpanMode parse_span_mode(std::string_view name) {
  if (name == "bounding") return SpanMode::Bounding;
  if (name == "tight") return SpanMode::Tight;
  throw ParseError("unknown span mode '" + std::string(name) + "' (bounding|tight)");
}

std::string_view to_string(SpanMode mode) {
  return mode == SpanMode::Bounding ? "bounding" : "tight";
}

}  // namespace gaia
