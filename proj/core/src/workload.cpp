#include "gaia/workload.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaia/errors.hpp"

namespace gaia {

namespace rng {

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_index over an empty range");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t u = gen();
  while (u >= limit) u = gen();
  return u % n;
}

std::uint64_t poisson(std::mt19937_64& gen, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("poisson mean must be >= 0");
  // Sum of independent Poisson draws is Poisson; chunking keeps exp(-chunk)
  // far from underflow.
  constexpr double kChunk = 64.0;
  std::uint64_t total = 0;
  while (lambda > 0.0) {
    const double part = std::min(lambda, kChunk);
    lambda -= part;
    const double limit = std::exp(-part);
    double product = uniform01(gen);
    while (product > limit) {
      ++total;
      product *= uniform01(gen);
    }
  }
  return total;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace rng

void validate(const WorkloadSpec& spec) {
  if (!(spec.r_min > 0.0) || !(spec.r_max > 0.0)) {
    throw ConfigError("query radii must be positive");
  }
  if (spec.r_min > spec.r_max) throw ConfigError("radius range requires r_min <= r_max");
}

std::vector<Entity> generate_entities(const WorkloadSpec& spec) {
  if (spec.dss == 0) return {};
  const GridConfig& cfg = spec.cfg;
  std::mt19937_64 gen(spec.seed);

  const double c = cfg.cell_side();
  const double density = static_cast<double>(spec.dss) / cfg.area();

  std::vector<Point> points;
  points.reserve(spec.dss + spec.dss / 8 + 16);
  for (std::int64_t cy = 0; cy < cfg.rows(); ++cy) {
    const double y0 = cfg.min_h() + static_cast<double>(cy) * c;
    const double y1 = std::min(y0 + c, cfg.max_h());
    for (std::int64_t cx = 0; cx < cfg.columns(); ++cx) {
      const double x0 = cfg.min_d() + static_cast<double>(cx) * c;
      const double x1 = std::min(x0 + c, cfg.max_d());
      if (!(x1 > x0) || !(y1 > y0)) continue;
      const std::uint64_t n = rng::poisson(gen, density * (x1 - x0) * (y1 - y0));
      for (std::uint64_t i = 0; i < n; ++i) {
        const double x = x0 + rng::uniform01(gen) * (x1 - x0);
        const double y = y0 + rng::uniform01(gen) * (y1 - y0);
        points.push_back({std::min(x, cfg.max_d()), std::min(y, cfg.max_h())});
      }
    }
  }

  if (points.size() > spec.dss) {
    std::vector<bool> removed(points.size(), false);
    std::uint64_t excess = points.size() - spec.dss;
    while (excess > 0) {
      const auto i = rng::uniform_index(gen, points.size());
      if (removed[i]) continue;
      removed[i] = true;
      --excess;
    }
    std::size_t w = 0;
    for (std::size_t r = 0; r < points.size(); ++r) {
      if (!removed[r]) points[w++] = points[r];
    }
    points.resize(w);
  }
  while (points.size() < spec.dss) {
    const double x = cfg.min_d() + rng::uniform01(gen) * cfg.width();
    const double y = cfg.min_h() + rng::uniform01(gen) * cfg.height();
    points.push_back({x, y});
  }

  std::vector<Entity> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto id = static_cast<EntityId>(i);
    out.push_back({id, points[i], "e" + std::to_string(id)});
  }
  return out;
}

std::vector<GeoShape> generate_queries(const WorkloadSpec& spec) {
  validate(spec);
  const GridConfig& cfg = spec.cfg;
  std::mt19937_64 gen(rng::mix(spec.seed ^ 0x5175657279ULL));

  auto place = [&](double lo, double hi, double r) {
    const double a = lo + r;
    const double b = hi - r;
    if (a >= b) return (lo + hi) / 2.0;  // disc wider than the world
    return a + rng::uniform01(gen) * (b - a);
  };

  std::vector<GeoShape> out;
  out.reserve(spec.query_count);
  for (std::uint64_t i = 0; i < spec.query_count; ++i) {
    const double r = spec.r_min + rng::uniform01(gen) * (spec.r_max - spec.r_min);
    const double x = place(cfg.min_d(), cfg.max_d(), r);
    const double y = place(cfg.min_h(), cfg.max_h(), r);
    out.emplace_back(Disc{{x, y}, r});
  }
  return out;
}

}  // namespace gaia
