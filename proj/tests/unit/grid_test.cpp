#include "gaia/grid.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gaia/errors.hpp"
#include "test_support.hpp"

namespace gaia {
namespace {

using testing::unit_grid;

TEST(GridConfig, DerivesDiscreteDimensions) {
  const auto cfg = unit_grid();
  EXPECT_EQ(cfg.columns(), 10);
  EXPECT_EQ(cfg.rows(), 10);
  EXPECT_EQ(cfg.cell_count(), 100u);
  EXPECT_DOUBLE_EQ(cfg.width(), 100.0);
}

TEST(GridConfig, CeilingDivisionCoversExtent) {
  const auto cfg = GridConfig::make(0, 105, 0, 95, 10);
  EXPECT_EQ(cfg.columns(), 11);
  EXPECT_EQ(cfg.rows(), 10);
  EXPECT_GE(cfg.columns() * 10.0, cfg.width());
  EXPECT_GE(cfg.rows() * 10.0, cfg.height());

  // Decimal sides that divide evenly in exact arithmetic must not grow an extra column.
  const auto deci = GridConfig::make(0, 0.7, 0, 0.3, 0.1);
  EXPECT_EQ(deci.columns(), 7);
  EXPECT_EQ(deci.rows(), 3);
}

TEST(GridConfig, RejectsInvalidBounds) {
  EXPECT_THROW(GridConfig::make(0, 0, 0, 10, 1), ConfigError);
  EXPECT_THROW(GridConfig::make(0, 10, 5, 1, 1), ConfigError);
  EXPECT_THROW(GridConfig::make(0, 10, 0, 10, 0), ConfigError);
  EXPECT_THROW(GridConfig::make(0, 10, 0, 10, -1), ConfigError);
  EXPECT_THROW(GridConfig::make(0, 10, 0, 5, 6), ConfigError);  // c > min(D, H)
}

TEST(CellOf, Examples) {
  const auto cfg = unit_grid();
  EXPECT_EQ(cell_of({0, 0}, cfg), (CellCoord{0, 0}));
  EXPECT_EQ(cell_of({35, 27}, cfg), (CellCoord{3, 2}));
  EXPECT_EQ(cell_of({100, 100}, cfg), (CellCoord{9, 9}));
}

TEST(CellOf, NegativeOriginIsOffset) {
  const auto cfg = GridConfig::make(-180, 180, -90, 90, 10);
  EXPECT_EQ(cell_of({-180, -90}, cfg), (CellCoord{0, 0}));
  EXPECT_EQ(cell_of({-175, -85}, cfg), (CellCoord{0, 0}));
  EXPECT_EQ(cell_of({0.5, 0.5}, cfg), (CellCoord{18, 9}));
}

TEST(CellOf, OutOfBoundsNamesCoordinate) {
  const auto cfg = unit_grid();
  try {
    cell_of({100.5, 3}, cfg);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("x = 100.5"), std::string::npos);
  }
  try {
    cell_of({3, -1}, cfg);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("y = -1"), std::string::npos);
  }
}

TEST(HashOfCell, Examples) {
  const auto cfg = unit_grid();
  EXPECT_EQ(hash_of_cell({0, 0}, cfg).value, 0u);
  EXPECT_EQ(hash_of_cell({3, 2}, cfg).value, 23u);
  EXPECT_EQ(hash_of_cell({9, 9}, cfg).value, cfg.cell_count() - 1);
  EXPECT_THROW(hash_of_cell({10, 0}, cfg), DomainError);
  EXPECT_THROW(hash_of_cell({0, -1}, cfg), DomainError);
}

TEST(HashOf, Examples) {
  const auto cfg = unit_grid();
  EXPECT_EQ(hash_of({35, 27}, cfg).value, 23u);
  EXPECT_EQ(hash_of({0, 0}, cfg).value, 0u);
  EXPECT_EQ(hash_of({30, 20}, cfg), hash_of({39.999, 29.999}, cfg));
  EXPECT_THROW(hash_of({-1, 0}, cfg), DomainError);
}

TEST(CellOfHash, Examples) {
  const auto cfg = unit_grid();
  EXPECT_EQ(cell_of_hash({0}, cfg), (CellCoord{0, 0}));
  EXPECT_EQ(cell_of_hash({23}, cfg), (CellCoord{3, 2}));
  EXPECT_THROW(cell_of_hash({100}, cfg), DomainError);
}

// Bijection, row contiguity and in-row monotonicity over random grids.
TEST(GridProperties, LinearizationIsRowMajorBijection) {
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> side(0.5, 7.0);
  std::uniform_real_distribution<double> extent(7.0, 60.0);
  std::uniform_real_distribution<double> origin(-100.0, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double x0 = origin(gen);
    const double y0 = origin(gen);
    const auto cfg = GridConfig::make(x0, x0 + extent(gen), y0, y0 + extent(gen), side(gen));
    std::set<std::uint64_t> seen;
    for (std::int64_t cy = 0; cy < cfg.rows(); ++cy) {
      for (std::int64_t cx = 0; cx < cfg.columns(); ++cx) {
        const HashKey k = hash_of_cell({cx, cy}, cfg);
        ASSERT_LT(k.value, cfg.cell_count());
        ASSERT_TRUE(seen.insert(k.value).second);
        ASSERT_EQ(cell_of_hash(k, cfg), (CellCoord{cx, cy}));
        if (cx + 1 < cfg.columns()) {
          ASSERT_EQ(hash_of_cell({cx + 1, cy}, cfg).value, k.value + 1);
        }
      }
    }
    ASSERT_EQ(seen.size(), cfg.cell_count());
  }
}

TEST(GridProperties, PointsInOneCellShareAKey) {
  const auto cfg = GridConfig::make(-50, 50, 10, 70, 4);
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t cx = static_cast<std::int64_t>(u(gen) * static_cast<double>(cfg.columns()));
    const std::int64_t cy = static_cast<std::int64_t>(u(gen) * static_cast<double>(cfg.rows()));
    const double left = cfg.min_d() + static_cast<double>(cx) * cfg.cell_side();
    const double bottom = cfg.min_h() + static_cast<double>(cy) * cfg.cell_side();
    const Point p{left + u(gen) * cfg.cell_side() * 0.999, bottom + u(gen) * cfg.cell_side() * 0.999};
    const Point q{left + u(gen) * cfg.cell_side() * 0.999, bottom + u(gen) * cfg.cell_side() * 0.999};
    ASSERT_EQ(hash_of(p, cfg), hash_of(q, cfg));
    ASSERT_EQ(hash_of(p, cfg), hash_of_cell({cx, cy}, cfg));
  }
}

TEST(GridConfigFile, RoundTrip) {
  const auto cfg = GridConfig::make(-180, 180, -90, 90, 0.25);
  EXPECT_EQ(parse_grid_config(format_grid_config(cfg)), cfg);
}

TEST(GridConfigFile, ParsesCommentsAndRejectsBadInput) {
  const auto cfg = parse_grid_config(
      "# world\nmin_d = 0\nmax_d = 100\n\nmin_h=0\nmax_h=50\ncell_side = 5\n");
  EXPECT_EQ(cfg.columns(), 20);
  EXPECT_EQ(cfg.rows(), 10);
  EXPECT_THROW(parse_grid_config("min_d = 0\nmax_d = 1\n"), ParseError);
  EXPECT_THROW(parse_grid_config("min_d 0\n"), ParseError);
  EXPECT_THROW(parse_grid_config("min_d=0\nmax_d=1\nmin_h=0\nmax_h=1\ncell_side=x\n"),
               ParseError);
  EXPECT_THROW(parse_grid_config("colour=1\n"), ParseError);
}

}  // namespace
}  // namespace gaia
