#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gaia/datastore.hpp"
#include "gaia/geometry.hpp"

namespace gaia {

class TaskPool;

/// The four access models compared by the benchmark.
enum class ModelKind { Raw, Projection, Grid, Gaia };

inline constexpr ModelKind kAllModels[] = {ModelKind::Raw, ModelKind::Projection,
                                           ModelKind::Grid, ModelKind::Gaia};

/// Lower-case CLI / CSV name: raw, projection, grid, gaia.
std::string_view to_string(ModelKind model);
/// Name used in report tables: RAW, Projection, GRID, GAIA.
std::string_view display_name(ModelKind model);
/// Accepts either spelling, case-insensitively ("coordinates" is an alias of raw).
ModelKind parse_model(std::string_view name);

struct QueryOptions {
  SpanMode mode = SpanMode::Bounding;
  /// Post-filter every model's output with contains(). When false, GAIA and
  /// GRID return whole cells; RAW and PROJECTION filter regardless.
  bool exact = true;
  /// Maximum GAIA segment scans in flight; 0 means one per segment.
  std::size_t fan_out = 0;
  /// Executor for GAIA's segment fan-out; nullptr means TaskPool::shared().
  TaskPool* pool = nullptr;
};

/// Output of one query.
///
/// Cell-granular results are kept as views into the store (`runs`, one per
/// GAIA segment or GRID cell); filtered results as pointers into the store
/// (`matches`). Runs never overlap since segments and cells are disjoint.
/// The result must not outlive the store it came from.
struct QueryResult {
  std::vector<std::span<const Entity>> runs;
  std::vector<const Entity*> matches;
  CostCounters counters;
  double elapsed_seconds = 0.0;
  bool exact = false;

  std::size_t size() const;
  /// Sorted, deduplicated ids of everything in the result.
  std::vector<EntityId> ids() const;
};

/// Runs `shape` against `store` with the given access model.
///
/// GAIA plans the shape into row segments and issues one range_scan per
/// segment concurrently, then joins on all of them. GRID issues one cell_get
/// per cell of the shape's cell bounding box, in order. PROJECTION scans the
/// x-band covering the shape and filters. RAW scans everything and filters.
///
/// Throws EmptyIntersectionError if the shape misses the world and
/// ConfigError if cfg is not the store's grid.
QueryResult query(const Store& store, const GeoShape& shape, ModelKind model,
                  const GridConfig& cfg, const QueryOptions& options = {});

/// Brute-force ground truth: every entity of the store inside `shape`,
/// independent of layouts and plans.
std::vector<const Entity*> oracle(const Store& store, const GeoShape& shape);
std::vector<EntityId> oracle_ids(const Store& store, const GeoShape& shape);

}  // namespace gaia
