#pragma once

// Embedded read-only store with one physical layout per access model.
//
// Every layout holds its own copy of the entities so each scan primitive can
// hand out a contiguous view without touching the other layouts:
//   GAIA        sorted by (hash_of(point), id)    -> range_scan
//   GRID        one bucket per cell (ordered map) -> cell_get
//   PROJECTION  sorted by (x column, id)          -> projection_scan
//   RAW         load order                        -> full_scan
//
// After build() the store never changes, so any number of threads may scan it
// concurrently. Cost counters live in a caller-owned CostCounters.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gaia/grid.hpp"

namespace gaia {

using EntityId = std::int64_t;

struct Entity {
  EntityId id = 0;
  Point point;
  std::string payload;

  friend bool operator==(const Entity&, const Entity&) = default;
};

/// Unique ordered key of the GAIA layout; the id breaks ties inside a cell.
struct StoreKey {
  HashKey hash;
  EntityId id = 0;

  friend auto operator<=>(const StoreKey&, const StoreKey&) = default;
};

struct CostCounters {
  std::uint64_t queries_issued = 0;
  std::uint64_t entries_scanned = 0;

  CostCounters& operator+=(const CostCounters& o) {
    queries_issued += o.queries_issued;
    entries_scanned += o.entries_scanned;
    return *this;
  }
  friend bool operator==(const CostCounters&, const CostCounters&) = default;
};

class Store {
 public:
  /// Throws BuildError on duplicate ids and DomainError on points outside cfg.
  static Store build(std::vector<Entity> entities, const GridConfig& cfg);

  const GridConfig& config() const { return cfg_; }
  std::size_t size() const { return raw_.size(); }
  bool empty() const { return raw_.empty(); }

  /// Entities whose GAIA hash lies in [lo, hi], in StoreKey order.
  std::span<const Entity> range_scan(HashKey lo, HashKey hi, CostCounters& counters) const;

  /// Entities stored in one cell bucket.
  std::span<const Entity> cell_get(CellCoord cc, CostCounters& counters) const;

  /// Entities whose x column lies in [col_lo, col_hi]: a full-height band.
  std::span<const Entity> projection_scan(std::int64_t col_lo, std::int64_t col_hi,
                                          CostCounters& counters) const;

  /// Every entity, in load order.
  std::span<const Entity> full_scan(CostCounters& counters) const;

  /// Load-order view without touching counters; ground truth for oracles.
  std::span<const Entity> entities() const { return raw_; }

  std::span<const StoreKey> gaia_keys() const { return gaia_keys_; }
  std::size_t grid_bucket_count() const { return grid_.size(); }
  std::size_t projection_size() const { return projection_.size(); }

 private:
  explicit Store(const GridConfig& cfg) : cfg_(cfg) {}

  GridConfig cfg_;
  std::vector<Entity> raw_;
  std::vector<StoreKey> gaia_keys_;
  // Seek index of the GAIA layout: packed hashes plus every kFenceStride-th
  // hash, a small sparse index that stays cache resident.
  static constexpr std::size_t kFenceStride = 64;
  /// Position of the first hash >= key (past: > key) in the GAIA layout.
  std::size_t seek(std::uint64_t key, bool past) const;
  std::vector<std::uint64_t> gaia_hashes_;
  std::vector<std::uint64_t> gaia_fences_;
  std::vector<Entity> gaia_;
  std::map<CellCoord, std::vector<Entity>> grid_;
  std::vector<std::int64_t> projection_keys_;
  std::vector<Entity> projection_;
};

// Dataset CSV: header `id,x,y,payload`, one entity per line. The payload is
// everything after the third comma and must not contain line breaks.
void write_dataset(std::ostream& os, std::span<const Entity> entities);
void save_dataset(const std::string& path, std::span<const Entity> entities);
std::vector<Entity> parse_dataset(const std::string& text);
std::vector<Entity> load_dataset(const std::string& path);

}  // namespace gaia
