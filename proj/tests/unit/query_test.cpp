#include "gaia/query.hpp"

#include <gtest/gtest.h>

#include <random>

#include "gaia/errors.hpp"
#include "gaia/segmenter.hpp"
#include "gaia/task_pool.hpp"
#include "test_support.hpp"

namespace gaia {
namespace {

using testing::uniform_entities;
using testing::unit_grid;

// Reference implementation that never touches a store layout.
std::vector<EntityId> brute_ids(const std::vector<Entity>& es, const GeoShape& shape) {
  std::vector<EntityId> out;
  for (const auto& e : es) {
    if (contains(shape, e.point)) out.push_back(e.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(ModelNames, ParseBothSpellings) {
  for (auto m : kAllModels) {
    EXPECT_EQ(parse_model(to_string(m)), m);
    EXPECT_EQ(parse_model(display_name(m)), m);
  }
  EXPECT_EQ(parse_model("Coordinates"), ModelKind::Raw);
  EXPECT_THROW(parse_model("rtree"), ParseError);
}

TEST(Query, DiscMatchesOracleForEveryModel) {
  const auto cfg = unit_grid();
  const auto es = uniform_entities(5000, cfg, 10);
  const auto store = Store::build(es, cfg);
  const GeoShape d = Disc{{50, 50}, 15};
  const auto want = brute_ids(es, d);
  ASSERT_FALSE(want.empty());
  EXPECT_EQ(oracle_ids(store, d), want);
  for (auto m : kAllModels) {
    for (auto mode : {SpanMode::Bounding, SpanMode::Tight}) {
      const auto r = query(store, d, m, cfg, {mode, true});
      EXPECT_TRUE(r.exact);
      EXPECT_EQ(r.ids(), want) << to_string(m);
      EXPECT_EQ(r.size(), want.size());
      EXPECT_GE(r.elapsed_seconds, 0.0);
    }
  }
}

TEST(Query, IssuedCountsOnPlanExample) {
  const auto cfg = unit_grid();
  const auto store = Store::build(uniform_entities(2000, cfg, 11), cfg);
  const GeoShape d = Disc{{50, 50}, 15};
  EXPECT_EQ(query(store, d, ModelKind::Gaia, cfg).counters.queries_issued, 4u);
  EXPECT_EQ(query(store, d, ModelKind::Grid, cfg).counters.queries_issued, 16u);
  EXPECT_EQ(query(store, d, ModelKind::Raw, cfg).counters.queries_issued, 1u);
  EXPECT_EQ(query(store, d, ModelKind::Raw, cfg).counters.entries_scanned, 2000u);
  EXPECT_EQ(query(store, d, ModelKind::Projection, cfg).counters.queries_issued, 1u);
}

TEST(Query, EmptyStore) {
  const auto cfg = unit_grid();
  const auto store = Store::build({}, cfg);
  for (auto m : kAllModels) {
    const auto r = query(store, Disc{{50, 50}, 15}, m, cfg);
    EXPECT_EQ(r.size(), 0u);
    EXPECT_TRUE(r.exact);
    EXPECT_GE(r.elapsed_seconds, 0.0);
  }
  EXPECT_TRUE(oracle(store, Rect{{0, 0}, {100, 100}}).empty());
}

TEST(Query, Errors) {
  const auto cfg = unit_grid();
  const auto store = Store::build(uniform_entities(10, cfg, 1), cfg);
  EXPECT_THROW(query(store, Disc{{500, 500}, 5}, ModelKind::Gaia, cfg), EmptyIntersectionError);
  EXPECT_THROW(query(store, Disc{{50, 50}, 5}, ModelKind::Gaia, GridConfig::make(0, 100, 0, 100, 5)),
               ConfigError);
}

TEST(Query, WorldCoveringShapeReturnsEverything) {
  const auto cfg = unit_grid();
  const auto store = Store::build(uniform_entities(700, cfg, 12), cfg);
  EXPECT_EQ(oracle(store, Rect{{0, 0}, {100, 100}}).size(), 700u);
  for (auto m : kAllModels) {
    EXPECT_EQ(query(store, Rect{{-5, -5}, {105, 105}}, m, cfg).size(), 700u);
  }
}

// Non-exact GAIA and GRID results are supersets of the oracle made of whole
// cells; GAIA reads exactly the entries of its plan's cells.
TEST(Query, CellGranularResultsAreSupersets) {
  const auto cfg = unit_grid();
  const auto es = uniform_entities(4000, cfg, 13);
  const auto store = Store::build(es, cfg);
  std::mt19937 gen(14);
  std::uniform_real_distribution<double> pos(0, 100), rad(0, 30);
  for (int i = 0; i < 200; ++i) {
    const GeoShape d = Disc{{pos(gen), pos(gen)}, rad(gen)};
    const auto want = brute_ids(es, d);
    for (auto m : {ModelKind::Gaia, ModelKind::Grid}) {
      const auto r = query(store, d, m, cfg, {SpanMode::Tight, false});
      EXPECT_FALSE(r.exact);
      const auto got = r.ids();
      ASSERT_TRUE(std::includes(got.begin(), got.end(), want.begin(), want.end()));
    }
    const auto p = plan(d, cfg, SpanMode::Tight);
    std::uint64_t in_plan = 0;
    for (const auto& e : es) {
      const auto k = hash_of(e.point, cfg).value;
      for (const auto& s : p.segments) in_plan += (s.key_lo.value <= k && k <= s.key_hi.value);
    }
    const auto g = query(store, d, ModelKind::Gaia, cfg, {SpanMode::Tight, false});
    ASSERT_EQ(g.counters.entries_scanned, in_plan);
    ASSERT_EQ(g.counters.queries_issued, p.size());
    ASSERT_EQ(g.size(), in_plan);
  }
}

TEST(Query, FanOutDoesNotChangeResults) {
  const auto cfg = unit_grid();
  const auto store = Store::build(uniform_entities(3000, cfg, 15), cfg);
  const GeoShape d = Disc{{40, 60}, 33};
  TaskPool pool(3);
  const auto base = query(store, d, ModelKind::Gaia, cfg, {SpanMode::Bounding, true, 1, &pool});
  for (std::size_t fan : {0u, 2u, 3u, 100u}) {
    const auto r = query(store, d, ModelKind::Gaia, cfg, {SpanMode::Bounding, true, fan, &pool});
    EXPECT_EQ(r.ids(), base.ids());
    EXPECT_EQ(r.counters, base.counters);
  }
}

TEST(Query, PolygonsMatchBruteForce) {
  const auto cfg = GridConfig::make(-50, 50, -20, 40, 3);
  const auto es = uniform_entities(3000, cfg, 16);
  const auto store = Store::build(es, cfg);
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> px(-50, 50), py(-20, 40), rad(1, 25);
  for (int i = 0; i < 60; ++i) {
    const GeoShape poly = testing::random_convex_polygon(gen, {px(gen), py(gen)}, rad(gen), 8);
    const auto want = brute_ids(es, poly);
    for (auto m : kAllModels) {
      ASSERT_EQ(query(store, poly, m, cfg, {SpanMode::Tight, true}).ids(), want);
    }
  }
}

}  // namespace
}  // namespace gaia
