#include "gaia/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "gaia/errors.hpp"
#include "gaia/text_io.hpp"

namespace gaia {

namespace {

// ceil(extent / side), tolerant of quotients like 10.000000000000002 that
// come from decimal inputs which divide evenly in exact arithmetic.
std::int64_t cells_across(double extent, double side) {
  const double q = extent / side;
  const double r = std::round(q);
  if (r >= 1.0 && std::abs(q - r) <= 1e-9 * r) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(q));
}

std::int64_t clamp_index(double offset, double side, std::int64_t count) {
  const auto i = static_cast<std::int64_t>(std::floor(offset / side));
  return std::clamp<std::int64_t>(i, 0, count - 1);
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const CellCoord& cc) {
  return os << '(' << cc.cx << ',' << cc.cy << ')';
}

std::ostream& operator<<(std::ostream& os, const HashKey& k) { return os << k.value; }

GridConfig GridConfig::make(double min_d, double max_d, double min_h, double max_h,
                            double cell_side) {
  for (double v : {min_d, max_d, min_h, max_h, cell_side}) {
    if (!std::isfinite(v)) throw ConfigError("grid bounds and cell side must be finite");
  }
  if (!(max_d > min_d)) throw ConfigError("grid requires max_d > min_d");
  if (!(max_h > min_h)) throw ConfigError("grid requires max_h > min_h");
  if (!(cell_side > 0.0)) throw ConfigError("grid requires cell_side > 0");
  if (cell_side > std::min(max_d - min_d, max_h - min_h)) {
    throw ConfigError("grid requires cell_side <= min(width, height)");
  }

  GridConfig cfg;
  cfg.min_d_ = min_d;
  cfg.max_d_ = max_d;
  cfg.min_h_ = min_h;
  cfg.max_h_ = max_h;
  cfg.cell_side_ = cell_side;
  cfg.columns_ = cells_across(max_d - min_d, cell_side);
  cfg.rows_ = cells_across(max_h - min_h, cell_side);
  if (cfg.columns_ > (std::int64_t{1} << 31) || cfg.rows_ > (std::int64_t{1} << 31)) {
    throw ConfigError("grid has too many cells");
  }
  return cfg;
}

std::int64_t GridConfig::column_of(double x) const {
  return clamp_index(x - min_d_, cell_side_, columns_);
}

std::int64_t GridConfig::row_of(double y) const {
  return clamp_index(y - min_h_, cell_side_, rows_);
}

CellCoord cell_of(Point p, const GridConfig& cfg) {
  if (!(p.x >= cfg.min_d() && p.x <= cfg.max_d())) {
    std::ostringstream msg;
    msg << "x = " << p.x << " outside world [" << cfg.min_d() << ", " << cfg.max_d() << "]";
    throw DomainError(msg.str());
  }
  if (!(p.y >= cfg.min_h() && p.y <= cfg.max_h())) {
    std::ostringstream msg;
    msg << "y = " << p.y << " outside world [" << cfg.min_h() << ", " << cfg.max_h() << "]";
    throw DomainError(msg.str());
  }
  return {cfg.column_of(p.x), cfg.row_of(p.y)};
}

HashKey hash_of_cell(CellCoord cc, const GridConfig& cfg) {
  if (cc.cx < 0 || cc.cx >= cfg.columns() || cc.cy < 0 || cc.cy >= cfg.rows()) {
    std::ostringstream msg;
    msg << "cell " << cc << " outside grid " << cfg.columns() << 'x' << cfg.rows();
    throw DomainError(msg.str());
  }
  return {static_cast<std::uint64_t>(cc.cx) +
          static_cast<std::uint64_t>(cc.cy) * static_cast<std::uint64_t>(cfg.columns())};
}

HashKey hash_of(Point p, const GridConfig& cfg) { return hash_of_cell(cell_of(p, cfg), cfg); }

CellCoord cell_of_hash(HashKey k, const GridConfig& cfg) {
  if (k.value >= cfg.cell_count()) {
    std::ostringstream msg;
    msg << "key " << k.value << " outside [0, " << cfg.cell_count() << ")";
    throw DomainError(msg.str());
  }
  const auto d = static_cast<std::uint64_t>(cfg.columns());
  return {static_cast<std::int64_t>(k.value % d), static_cast<std::int64_t>(k.value / d)};
}

GridConfig parse_grid_config(const std::string& text) {
  std::map<std::string, double, std::less<>> values;
  std::size_t line_no = 0;
  for (auto line : text::split(text, '\n')) {
    ++line_no;
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("grid config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(text::trim(line.substr(0, eq)));
    if (key != "min_d" && key != "max_d" && key != "min_h" && key != "max_h" &&
        key != "cell_side") {
      throw ParseError("grid config line " + std::to_string(line_no) + ": unknown key '" + key +
                       "'");
    }
    values[key] = text::parse_double(line.substr(eq + 1));
  }
  for (const char* key : {"min_d", "max_d", "min_h", "max_h", "cell_side"}) {
    if (values.find(key) == values.end()) {
      throw ParseError(std::string("grid config missing key '") + key + "'");
    }
  }
  return GridConfig::make(values["min_d"], values["max_d"], values["min_h"], values["max_h"],
                          values["cell_side"]);
}

GridConfig load_grid_config(const std::string& path) {
  return parse_grid_config(text::read_file(path));
}

std::string format_grid_config(const GridConfig& cfg) {
  std::string out;
  out += "min_d = " + text::format_double(cfg.min_d()) + "\n";
  out += "max_d = " + text::format_double(cfg.max_d()) + "\n";
  out += "min_h = " + text::format_double(cfg.min_h()) + "\n";
  out += "max_h = " + text::format_double(cfg.max_h()) + "\n";
  out += "cell_side = " + text::format_double(cfg.cell_side()) + "\n";
  return out;
}

void save_grid_config(const GridConfig& cfg, const std::string& path) {
  text::write_file(path, format_grid_config(cfg));
}

}  // namespace gaia
