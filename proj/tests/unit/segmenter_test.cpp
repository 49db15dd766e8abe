#include "gaia/segmenter.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "gaia/errors.hpp"
#include "test_support.hpp"

namespace gaia {
namespace {

using testing::unit_grid;

Segment seg(std::uint64_t lo, std::uint64_t hi, std::int64_t cy) { return {{lo}, {hi}, cy}; }

TEST(Plan, DiscBoundingExample) {
  const auto p = plan(Disc{{50, 50}, 15}, unit_grid(), SpanMode::Bounding);
  const std::vector<Segment> want{seg(33, 36, 3), seg(43, 46, 4), seg(53, 56, 5), seg(63, 66, 6)};
  EXPECT_EQ(p.segments, want);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.cell_count(), 16u);
}

TEST(Plan, DiscInsideOneCell) {
  const auto p = plan(Disc{{5, 5}, 1}, unit_grid(), SpanMode::Bounding);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.segments[0], seg(0, 0, 0));
}

TEST(Plan, TightVersusBoundingOnRowTwo) {
  const auto cfg = unit_grid();
  const auto t = plan(Disc{{50, 50}, 25}, cfg, SpanMode::Tight);
  const auto b = plan(Disc{{50, 50}, 25}, cfg, SpanMode::Bounding);
  ASSERT_FALSE(t.empty());
  ASSERT_FALSE(b.empty());
  EXPECT_EQ(t.segments.front(), seg(23, 26, 2));
  EXPECT_EQ(b.segments.front(), seg(22, 27, 2));
}

TEST(Plan, FullWidthRowsStayUnmerged) {
  // Adjacent full rows have contiguous keys but remain separate segments.
  const auto p = plan(Rect{{0, 0}, {100, 25}}, unit_grid(), SpanMode::Bounding);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p.segments[0], seg(0, 9, 0));
  EXPECT_EQ(p.segments[1], seg(10, 19, 1));
}

TEST(Plan, EmptyIntersectionIsAnError) {
  EXPECT_THROW(plan(Disc{{-50, -50}, 5}, unit_grid(), SpanMode::Bounding),
               EmptyIntersectionError);
}

TEST(Plan, TightPlanMayBeEmpty) {
  // Bounding box grazes the corner cell; the disc itself does not reach it.
  const auto p = plan(Disc{{-7, -7}, 9}, unit_grid(), SpanMode::Tight);
  EXPECT_TRUE(p.empty());
  EXPECT_EQ(plan(Disc{{-7, -7}, 9}, unit_grid(), SpanMode::Bounding).size(), 1u);
}

TEST(WritePlan, OneLinePerSegment) {
  std::ostringstream os;
  write_plan(os, plan(Disc{{50, 50}, 15}, unit_grid(), SpanMode::Bounding));
  EXPECT_EQ(os.str(), "3 33 36\n4 43 46\n5 53 56\n6 63 66\n");
}

// Brute-force cover soundness: every in-world point inside a random shape has
// its key inside some segment; segments are sorted, disjoint, one per row,
// and their count obeys the disc bound floor(2R/c) + 2.
TEST(PlanProperties, SoundDisjointAndBounded) {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u01(0, 1);
  for (int trial = 0; trial < 400; ++trial) {
    const double c = 1 + 9 * u01(gen);
    const auto cfg = GridConfig::make(0, 100, 0, 80, c);
    const double r = 30 * u01(gen);
    GeoShape shape;
    if (trial % 2 == 0) {
      shape = Disc{{-10 + 120 * u01(gen), -10 + 100 * u01(gen)}, r};
    } else {
      shape = testing::random_convex_polygon(gen, {100 * u01(gen), 80 * u01(gen)}, r + 1, 6);
    }
    const SpanMode mode = (trial % 4 < 2) ? SpanMode::Tight : SpanMode::Bounding;
    SegmentPlan p;
    try {
      p = plan(shape, cfg, mode);
    } catch (const EmptyIntersectionError&) {
      continue;
    }
    std::set<std::int64_t> rows;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto& s = p.segments[i];
      ASSERT_LE(s.key_lo.value, s.key_hi.value);
      ASSERT_EQ(cell_of_hash(s.key_lo, cfg).cy, s.cy);
      ASSERT_EQ(cell_of_hash(s.key_hi, cfg).cy, s.cy);
      ASSERT_TRUE(rows.insert(s.cy).second);
      if (i > 0) ASSERT_LT(p.segments[i - 1].key_hi.value, s.key_lo.value);
    }
    if (const auto* d = std::get_if<Disc>(&shape)) {
      ASSERT_LE(p.size(), static_cast<std::size_t>(std::floor(2 * d->radius / c)) + 2);
    }
    for (int k = 0; k < 300; ++k) {
      const Point q{100 * u01(gen), 80 * u01(gen)};
      if (!contains(shape, q)) continue;
      const auto key = hash_of(q, cfg).value;
      bool covered = false;
      for (const auto& s : p.segments) covered |= (s.key_lo.value <= key && key <= s.key_hi.value);
      ASSERT_TRUE(covered) << format_shape(shape) << " point " << q.x << "," << q.y;
    }
  }
}

TEST(PlanProperties, TightCellsSubsetOfBounding) {
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> u01(0, 1);
  const auto cfg = unit_grid();
  for (int trial = 0; trial < 200; ++trial) {
    const Disc d{{100 * u01(gen), 100 * u01(gen)}, 40 * u01(gen)};
    const auto t = plan(d, cfg, SpanMode::Tight);
    const auto b = plan(d, cfg, SpanMode::Bounding);
    ASSERT_LE(t.cell_count(), b.cell_count());
    for (const auto& s : t.segments) {
      bool nested = false;
      for (const auto& o : b.segments) {
        nested |= (o.key_lo.value <= s.key_lo.value && s.key_hi.value <= o.key_hi.value);
      }
      ASSERT_TRUE(nested);
    }
  }
}

}  // namespace
}  // namespace gaia
