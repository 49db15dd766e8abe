#include "gaia/datastore.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "gaia/errors.hpp"
#include "gaia/text_io.hpp"

namespace gaia {

Store Store::build(std::vector<Entity> entities, const GridConfig& cfg) {
  Store store(cfg);

  std::unordered_set<EntityId> seen;
  seen.reserve(entities.size());
  std::vector<HashKey> hashes;
  hashes.reserve(entities.size());
  for (const auto& e : entities) {
    if (!seen.insert(e.id).second) {
      throw BuildError("duplicate entity id " + std::to_string(e.id));
    }
    hashes.push_back(hash_of(e.point, cfg));
  }

  std::vector<std::size_t> order(entities.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  // GAIA layout.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return StoreKey{hashes[a], entities[a].id} < StoreKey{hashes[b], entities[b].id};
  });
  store.gaia_keys_.reserve(entities.size());
  store.gaia_hashes_.reserve(entities.size());
  store.gaia_.reserve(entities.size());
  for (std::size_t i : order) {
    store.gaia_keys_.push_back({hashes[i], entities[i].id});
    store.gaia_hashes_.push_back(hashes[i].value);
    store.gaia_.push_back(entities[i]);
  }

  for (std::size_t pos = 0; pos < store.gaia_hashes_.size(); pos += kFenceStride) {
    store.gaia_fences_.push_back(store.gaia_hashes_[pos]);
  }

  // GRID layout: gaia_ is already grouped by cell and ordered by id inside it.
  for (std::size_t i = 0; i < store.gaia_.size(); ++i) {
    store.grid_[cell_of_hash(store.gaia_keys_[i].hash, cfg)].push_back(store.gaia_[i]);
  }

  // PROJECTION layout.
  std::vector<std::int64_t> columns(entities.size());
  for (std::size_t i = 0; i < entities.size(); ++i) columns[i] = cfg.column_of(entities[i].point.x);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (columns[a] != columns[b]) return columns[a] < columns[b];
    return entities[a].id < entities[b].id;
  });
  store.projection_keys_.reserve(entities.size());
  store.projection_.reserve(entities.size());
  for (std::size_t i : order) {
    store.projection_keys_.push_back(columns[i]);
    store.projection_.push_back(entities[i]);
  }

  // RAW layout.
  store.raw_ = std::move(entities);
  return store;
}

std::size_t Store::seek(std::uint64_t hash, bool past) const {
  // Fence search narrows the seek to one block of kFenceStride hashes.
  auto before = [past](std::uint64_t probe, std::uint64_t key) {
    return past ? probe <= key : probe < key;
  };
  const auto fence = static_cast<std::size_t>(
      std::partition_point(gaia_fences_.begin(), gaia_fences_.end(),
                           [&](std::uint64_t f) { return before(f, hash); }) -
      gaia_fences_.begin());
  const std::size_t lo = fence == 0 ? 0 : (fence - 1) * kFenceStride;
  const std::size_t hi = std::min(gaia_hashes_.size(), fence * kFenceStride);
  const auto it = std::partition_point(gaia_hashes_.begin() + static_cast<std::ptrdiff_t>(lo),
                                       gaia_hashes_.begin() + static_cast<std::ptrdiff_t>(hi),
                                       [&](std::uint64_t h) { return before(h, hash); });
  return static_cast<std::size_t>(it - gaia_hashes_.begin());
}

std::span<const Entity> Store::range_scan(HashKey lo, HashKey hi, CostCounters& counters) const {
  if (lo > hi) {
    throw DomainError("inverted key range [" + std::to_string(lo.value) + ", " +
                      std::to_string(hi.value) + "]");
  }
  const std::size_t first = seek(lo.value, false);
  const std::size_t last = seek(hi.value, true);
  counters.queries_issued += 1;
  counters.entries_scanned += last - first;
  return std::span<const Entity>(gaia_).subspan(first, last - first);
}

std::span<const Entity> Store::cell_get(CellCoord cc, CostCounters& counters) const {
  if (cc.cx < 0 || cc.cx >= cfg_.columns() || cc.cy < 0 || cc.cy >= cfg_.rows()) {
    throw DomainError("cell (" + std::to_string(cc.cx) + "," + std::to_string(cc.cy) +
                      ") outside grid");
  }
  counters.queries_issued += 1;
  const auto it = grid_.find(cc);
  if (it == grid_.end()) return {};
  counters.entries_scanned += it->second.size();
  return it->second;
}

std::span<const Entity> Store::projection_scan(std::int64_t col_lo, std::int64_t col_hi,
                                               CostCounters& counters) const {
  if (col_lo > col_hi) {
    throw DomainError("inverted projection range [" + std::to_string(col_lo) + ", " +
                      std::to_string(col_hi) + "]");
  }
  const auto first = std::lower_bound(projection_keys_.begin(), projection_keys_.end(), col_lo);
  const auto last = std::upper_bound(first, projection_keys_.end(), col_hi);
  const auto begin = static_cast<std::size_t>(first - projection_keys_.begin());
  const auto count = static_cast<std::size_t>(last - first);
  counters.queries_issued += 1;
  counters.entries_scanned += count;
  return std::span<const Entity>(projection_).subspan(begin, count);
}

std::span<const Entity> Store::full_scan(CostCounters& counters) const {
  counters.queries_issued += 1;
  counters.entries_scanned += raw_.size();
  return raw_;
}

void write_dataset(std::ostream& os, std::span<const Entity> entities) {
  os << "id,x,y,payload\n";
  for (const auto& e : entities) {
    if (e.payload.find_first_of("\r\n") != std::string::npos) {
      throw Error("payload of entity " + std::to_string(e.id) + " contains a line break");
    }
    os << e.id << ',' << text::format_double(e.point.x) << ','
       << text::format_double(e.point.y) << ',' << e.payload << '\n';
  }
}

void save_dataset(const std::string& path, std::span<const Entity> entities) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_dataset(out, entities);
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

std::vector<Entity> parse_dataset(const std::string& text) {
  auto lines = text::split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || text::trim(lines.front()) != "id,x,y,payload") {
    throw ParseError("dataset CSV must start with header 'id,x,y,payload'");
  }
  std::vector<Entity> out;
  out.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    const auto c3 = c2 == std::string_view::npos ? c2 : line.find(',', c2 + 1);
    if (c3 == std::string_view::npos) {
      throw ParseError("dataset line " + std::to_string(i + 1) + ": expected id,x,y,payload");
    }
    try {
      Entity e;
      e.id = text::parse_int(line.substr(0, c1));
      e.point.x = text::parse_double(line.substr(c1 + 1, c2 - c1 - 1));
      e.point.y = text::parse_double(line.substr(c2 + 1, c3 - c2 - 1));
      e.payload = std::string(line.substr(c3 + 1));
      out.push_back(std::move(e));
    } catch (const ParseError& err) {
      throw ParseError("dataset line " + std::to_string(i + 1) + ": " + err.what());
    }
  }
  return out;
}

std::vector<Entity> load_dataset(const std::string& path) {
  return parse_dataset(text::read_file(path));
}

}  // namespace gaia
