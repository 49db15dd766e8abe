#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gaia/geometry.hpp"
#include "gaia/grid.hpp"

namespace gaia {

/// Inclusive key range covering one grid row's share of a shape.
struct Segment {
  HashKey key_lo;
  HashKey key_hi;
  std::int64_t cy = 0;

  std::uint64_t cells() const { return key_hi.value - key_lo.value + 1; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Segments sorted by key_lo, pairwise disjoint, at most one per row.
struct SegmentPlan {
  std::vector<Segment> segments;

  std::size_t size() const { return segments.size(); }
  bool empty() const { return segments.empty(); }
  std::uint64_t cell_count() const;

  friend bool operator==(const SegmentPlan&, const SegmentPlan&) = default;
};

/// Cuts a shape into per-row key ranges. Rows are never merged, even when one
/// row's last key is adjacent to the next row's first key: a merged range
/// would pick up cells outside the shape's x-span.
///
/// An empty plan is a valid answer (for instance a Tight plan for a disc that
/// only touches the world with its bounding box). A shape whose bounding box
/// misses the world entirely throws EmptyIntersectionError.
SegmentPlan plan(const GeoShape& shape, const GridConfig& cfg, SpanMode mode);

/// One "cy key_lo key_hi" line per segment.
void write_plan(std::ostream& os, const SegmentPlan& plan);

}  // namespace gaia
