#pragma once

// World grid and the 2D -> 1D cell linearization.
//
// The world is a finite rectangle [min_d, max_d] x [min_h, max_h] cut into
// square cells of side c. A point maps to its cell (cx, cy) and a cell maps to
// the row-major key cx + cy * d, so cells of one grid row occupy a contiguous
// run of keys. That contiguity is what lets a shape be fetched as a handful of
// key ranges.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace gaia {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct CellCoord {
  std::int64_t cx = 0;
  std::int64_t cy = 0;

  friend auto operator<=>(const CellCoord& a, const CellCoord& b) {
    // Row-major so ordered containers iterate cells in key order.
    if (auto c = a.cy <=> b.cy; c != 0) return c;
    return a.cx <=> b.cx;
  }
  friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

struct HashKey {
  std::uint64_t value = 0;

  friend auto operator<=>(const HashKey&, const HashKey&) = default;
};

std::ostream& operator<<(std::ostream& os, const CellCoord& cc);
std::ostream& operator<<(std::ostream& os, const HashKey& k);

/// Immutable description of the world rectangle and its cell decomposition.
///
/// Construct through GridConfig::make, which validates the bounds and derives
/// the discrete dimensions with ceiling division so the grid always covers the
/// full extent.
class GridConfig {
 public:
  static GridConfig make(double min_d, double max_d, double min_h, double max_h,
                         double cell_side);

  double min_d() const { return min_d_; }
  double max_d() const { return max_d_; }
  double min_h() const { return min_h_; }
  double max_h() const { return max_h_; }
  double cell_side() const { return cell_side_; }

  double width() const { return max_d_ - min_d_; }
  double height() const { return max_h_ - min_h_; }
  double area() const { return width() * height(); }

  std::int64_t columns() const { return columns_; }
  std::int64_t rows() const { return rows_; }
  std::uint64_t cell_count() const {
    return static_cast<std::uint64_t>(columns_) * static_cast<std::uint64_t>(rows_);
  }

  bool contains(Point p) const {
    return p.x >= min_d_ && p.x <= max_d_ && p.y >= min_h_ && p.y <= max_h_;
  }

  /// Column index of an x coordinate, clamped into [0, d-1]. No bounds check.
  std::int64_t column_of(double x) const;
  /// Row index of a y coordinate, clamped into [0, h-1]. No bounds check.
  std::int64_t row_of(double y) const;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;

 private:
  GridConfig() = default;

  double min_d_ = 0.0;
  double max_d_ = 0.0;
  double min_h_ = 0.0;
  double max_h_ = 0.0;
  double cell_side_ = 0.0;
  std::int64_t columns_ = 0;
  std::int64_t rows_ = 0;
};

/// Cell containing p. Cells are half-open; points on max_d / max_h clamp to
/// the last column / row. Throws DomainError when p is outside the world.
CellCoord cell_of(Point p, const GridConfig& cfg);

/// Row-major key cx + cy * d. Throws DomainError for cells outside the grid.
HashKey hash_of_cell(CellCoord cc, const GridConfig& cfg);

/// hash_of_cell(cell_of(p)).
HashKey hash_of(Point p, const GridConfig& cfg);

/// Inverse of hash_of_cell. Throws DomainError when k >= d * h.
CellCoord cell_of_hash(HashKey k, const GridConfig& cfg);

// Plain-text config: one `key = value` per line, keys min_d, max_d, min_h,
// max_h, cell_side. Blank lines and lines starting with '#' are ignored.
GridConfig parse_grid_config(const std::string& text);
GridConfig load_grid_config(const std::string& path);
std::string format_grid_config(const GridConfig& cfg);
void save_grid_config(const GridConfig& cfg, const std::string& path);

}  // namespace gaia
