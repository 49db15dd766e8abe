#pragma once

// Seeded dataset and query generation.
//
// All randomness comes from std::mt19937_64, whose output sequence is fixed by
// the C++ standard, and is turned into numbers by the helpers below rather
// than by <random> distributions (whose algorithms are implementation-defined).
// A seed therefore reproduces the same dataset with any conforming toolchain:
//   uniform double  (u >> 11) * 2^-53, in [0, 1)
//   uniform index   rejection sampling on u mod n
//   Poisson(lambda) Knuth's product method, lambda split into chunks <= 64

#include <cstdint>
#include <random>
#include <vector>

#include "gaia/datastore.hpp"
#include "gaia/geometry.hpp"
#include "gaia/grid.hpp"

namespace gaia {

struct WorkloadSpec {
  std::uint64_t dss = 0;
  std::uint64_t seed = 0;
  GridConfig cfg = GridConfig::make(0.0, 1000.0, 0.0, 1000.0, 10.0);
  std::uint64_t query_count = 0;
  double r_min = 10.0;
  double r_max = 50.0;
};

/// Throws ConfigError for r_min > r_max or non-positive radii.
void validate(const WorkloadSpec& spec);

/// Homogeneous spatial Poisson process realized cell by cell: each cell draws
/// a Poisson count with mean dss * (cell area inside the world) / world area
/// and places that many points uniformly inside itself. The total is then
/// trimmed (uniformly random removals) or topped up (uniform points) to exactly
/// dss. Ids are 0..dss-1 in generation order; payloads are "e<id>".
std::vector<Entity> generate_entities(const WorkloadSpec& spec);

/// query_count discs with radius uniform in [r_min, r_max] and centre uniform
/// over the positions that keep the disc inside the world.
std::vector<GeoShape> generate_queries(const WorkloadSpec& spec);

namespace rng {

double uniform01(std::mt19937_64& gen);
std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n);
std::uint64_t poisson(std::mt19937_64& gen, double lambda);
/// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t mix(std::uint64_t x);

}  // namespace rng

}  // namespace gaia
