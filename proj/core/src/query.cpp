#include "gaia/query.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <string>

#include "gaia/errors.hpp"
#include "gaia/segmenter.hpp"
#include "gaia/task_pool.hpp"

namespace gaia {

namespace {

using Clock = std::chrono::steady_clock;

struct ColumnRange {
  std::int64_t cx_lo = 0;
  std::int64_t cx_hi = 0;
};

ColumnRange column_range(const GeoShape& shape, const GridConfig& cfg) {
  const Bounds b = bounds_of(shape);
  return {cfg.column_of(std::max(cfg.min_d(), b.x_lo)),
          cfg.column_of(std::min(cfg.max_d(), b.x_hi))};
}

void filter_into(std::span<const Entity> run, const GeoShape& shape,
                 std::vector<const Entity*>& out) {
  for (const auto& e : run) {
    if (contains(shape, e.point)) out.push_back(&e);
  }
}

void run_gaia(const Store& store, const GeoShape& shape, const GridConfig& cfg,
              const QueryOptions& options, QueryResult& result) {
  const SegmentPlan segments = plan(shape, cfg, options.mode);
  const std::size_t n = segments.size();

  struct Fetch {
    std::span<const Entity> run;
    std::vector<const Entity*> matches;
    CostCounters counters;
  };
  std::vector<Fetch> fetched(n);

  auto fetch_one = [&](std::size_t i) {
    const Segment& s = segments.segments[i];
    Fetch& f = fetched[i];
    f.run = store.range_scan(s.key_lo, s.key_hi, f.counters);
    if (options.exact) filter_into(f.run, shape, f.matches);
  };

  TaskPool& pool = options.pool ? *options.pool : TaskPool::shared();
  pool.run(n, options.fan_out == 0 ? n : options.fan_out, fetch_one);

  // Gather in segment order so the result does not depend on completion order.
  if (!options.exact) result.runs.reserve(n);
  for (auto& f : fetched) {
    result.counters += f.counters;
    if (options.exact) {
      result.matches.insert(result.matches.end(), f.matches.begin(), f.matches.end());
    } else if (!f.run.empty()) {
      result.runs.push_back(f.run);
    }
  }
}

void run_grid(const Store& store, const GeoShape& shape, const GridConfig& cfg,
              const QueryOptions& options, QueryResult& result) {
  const RowRange rows = row_range(shape, cfg);
  const ColumnRange cols = column_range(shape, cfg);
  for (std::int64_t cy = rows.cy_lo; cy <= rows.cy_hi; ++cy) {
    for (std::int64_t cx = cols.cx_lo; cx <= cols.cx_hi; ++cx) {
      const auto run = store.cell_get({cx, cy}, result.counters);
      if (options.exact) {
        filter_into(run, shape, result.matches);
      } else if (!run.empty()) {
        result.runs.push_back(run);
      }
    }
  }
}

void run_projection(const Store& store, const GeoShape& shape, const GridConfig& cfg,
                    QueryResult& result) {
  row_range(shape, cfg);  // world-intersection check
  const ColumnRange cols = column_range(shape, cfg);
  filter_into(store.projection_scan(cols.cx_lo, cols.cx_hi, result.counters), shape,
              result.matches);
}

void run_raw(const Store& store, const GeoShape& shape, const GridConfig& cfg,
             QueryResult& result) {
  row_range(shape, cfg);
  filter_into(store.full_scan(result.counters), shape, result.matches);
}

}  // namespace

std::string_view to_string(ModelKind model) {
  switch (model) {
    case ModelKind::Raw: return "raw";
    case ModelKind::Projection: return "projection";
    case ModelKind::Grid: return "grid";
    case ModelKind::Gaia: return "gaia";
  }
  return "?";
}

std::string_view display_name(ModelKind model) {
  switch (model) {
    case ModelKind::Raw: return "RAW";
    case ModelKind::Projection: return "Projection";
    case ModelKind::Grid: return "GRID";
    case ModelKind::Gaia: return "GAIA";
  }
  return "?";
}

ModelKind parse_model(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "raw" || lower == "coordinates") return ModelKind::Raw;
  if (lower == "projection") return ModelKind::Projection;
  if (lower == "grid") return ModelKind::Grid;
  if (lower == "gaia") return ModelKind::Gaia;
  throw ParseError("unknown model '" + std::string(name) + "' (raw|projection|grid|gaia)");
}

std::size_t QueryResult::size() const {
  std::size_t n = matches.size();
  for (const auto& run : runs) n += run.size();
  return n;
}

std::vector<EntityId> QueryResult::ids() const {
  std::vector<EntityId> out;
  out.reserve(size());
  for (const auto* e : matches) out.push_back(e->id);
  for (const auto& run : runs) {
    for (const auto& e : run) out.push_back(e.id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QueryResult query(const Store& store, const GeoShape& shape, ModelKind model,
                  const GridConfig& cfg, const QueryOptions& options) {
  if (!(store.config() == cfg)) {
    throw ConfigError("query grid does not match the grid the store was built with");
  }
  validate(shape);

  const auto start = Clock::now();
  QueryResult result;
  result.exact = options.exact || model == ModelKind::Raw || model == ModelKind::Projection;
  switch (model) {
    case ModelKind::Gaia: run_gaia(store, shape, cfg, options, result); break;
    case ModelKind::Grid: run_grid(store, shape, cfg, options, result); break;
    case ModelKind::Projection: run_projection(store, shape, cfg, result); break;
    case ModelKind::Raw: run_raw(store, shape, cfg, result); break;
  }
  result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

std::vector<const Entity*> oracle(const Store& store, const GeoShape& shape) {
  std::vector<const Entity*> out;
  for (const auto& e : store.entities()) {
    if (contains(shape, e.point)) out.push_back(&e);
  }
  return out;
}

std::vector<EntityId> oracle_ids(const Store& store, const GeoShape& shape) {
  std::vector<EntityId> ids;
  for (const auto* e : oracle(store, shape)) ids.push_back(e->id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace gaia
