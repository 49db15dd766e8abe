#include "gaia/segmenter.hpp"

#include <ostream>

namespace gaia {

std::uint64_t SegmentPlan::cell_count() const {
  std::uint64_t total = 0;
  for (const auto& s : segments) total += s.cells();
  return total;
}

SegmentPlan plan(const GeoShape& shape, const GridConfig& cfg, SpanMode mode) {
  validate(shape);
  const RowRange rows = row_range(shape, cfg);

  SegmentPlan out;
  out.segments.reserve(static_cast<std::size_t>(rows.cy_hi - rows.cy_lo + 1));
  for (std::int64_t cy = rows.cy_lo; cy <= rows.cy_hi; ++cy) {
    const auto span = row_span(shape, cy, cfg, mode);
    if (!span) continue;
    const std::int64_t cx_lo = cfg.column_of(span->x_lo);
    const std::int64_t cx_hi = cfg.column_of(span->x_hi);
    out.segments.push_back(
        {hash_of_cell({cx_lo, cy}, cfg), hash_of_cell({cx_hi, cy}, cfg), cy});
  }
  return out;
}

void write_plan(std::ostream& os, const SegmentPlan& plan) {
  for (const auto& s : plan.segments) {
    os << s.cy << ' ' << s.key_lo.value << ' ' << s.key_hi.value << '\n';
  }
}

}  // namespace gaia
