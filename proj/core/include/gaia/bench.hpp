#pragma once

// DSS x QPS measurement matrix.
//
// A cell of the matrix runs `qps` query workers as a closed batch: the
// workers are released together and each executes one query from the mix.
// That batch is repeated `trials` times after one discarded warm-up batch, by
// the same worker threads (started once per cell, synchronized per batch). ATD is the arithmetic mean of every individual query's elapsed time
// (steady_clock, measured around query(), so it includes any time a query
// spends waiting for the executor).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gaia/datastore.hpp"
#include "gaia/geometry.hpp"
#include "gaia/query.hpp"
#include "gaia/workload.hpp"

namespace gaia {

struct BenchOptions {
  std::uint64_t trials = 5;
  /// Lower bound on timed queries per cell: a cell runs
  /// max(trials, ceil(min_samples / qps)) batches, so small-QPS cells are not
  /// averaged over fewer queries than large ones. 0 disables it.
  std::uint64_t min_samples = 0;
  bool warmup = true;
  /// Skip timing: one trial, no warm-up, ATD reported as NaN. Counter fields
  /// are unaffected and fully deterministic.
  bool counters_only = false;
  QueryOptions query{SpanMode::Bounding, /*exact=*/false};
};

struct BenchRecord {
  ModelKind model = ModelKind::Gaia;
  std::uint64_t dss = 0;
  std::uint64_t qps = 0;
  double atd_seconds = 0.0;
  std::uint64_t trials = 0;
  double scanned_mean = 0.0;
  double issued_mean = 0.0;
  /// A failed cell keeps its coordinates but no measurements (trials == 0).
  bool failed = false;
  std::string error;
};

struct BenchMatrixSpec {
  std::vector<std::uint64_t> dss_list{10, 100, 1000, 10000, 100000, 1000000};
  std::vector<std::uint64_t> qps_list{1, 10, 100, 1000, 10000};
  std::vector<ModelKind> models{ModelKind::Raw, ModelKind::Projection, ModelKind::Grid,
                                ModelKind::Gaia};
  std::uint64_t seed = 1;
  BenchOptions options;
  /// Grid, radius range and query count of the query mix; dss and seed are
  /// overridden per dataset. query_count 0 means max(qps_list).
  WorkloadSpec workload;
};

/// Throws ConfigError for empty or non-ascending lists and zero trials.
void validate(const BenchMatrixSpec& spec);

/// Seed of the dataset generated for one DSS value of the matrix.
std::uint64_t dataset_seed(std::uint64_t matrix_seed, std::uint64_t dss);

/// One matrix cell. Requires queries.size() >= qps. Any worker failure
/// (including failure to start a worker thread) yields a failed record.
BenchRecord run_cell(const Store& store, ModelKind model, std::uint64_t qps,
                     std::span<const GeoShape> queries, const BenchOptions& options = {});

/// Runs every (dss, model, qps) cell, generating one dataset per DSS. Each
/// record is passed to `on_record` as soon as it completes. Failed cells are
/// reported, never fatal.
std::vector<BenchRecord> run_matrix(const BenchMatrixSpec& spec,
                                    const std::function<void(const BenchRecord&)>& on_record = {});

// Results CSV: model,dss,qps,atd_seconds,trials,scanned_mean,issued_mean
inline constexpr const char* kBenchCsvHeader =
    "model,dss,qps,atd_seconds,trials,scanned_mean,issued_mean";
void write_bench_header(std::ostream& os);
void write_bench_row(std::ostream& os, const BenchRecord& record);
std::vector<BenchRecord> parse_bench_csv(const std::string& text);

}  // namespace gaia
