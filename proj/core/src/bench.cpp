#include "gaia/bench.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <cmath>
#include <exception>
#include <latch>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "gaia/errors.hpp"
#include "gaia/text_io.hpp"

namespace gaia {

namespace {

struct WorkerTotals {
  double elapsed = 0.0;
  CostCounters counters;
};

// Runs `batches` closed batches of qps workers. The workers are started once
// and released together at the start of every batch; a batch starts only when
// every worker has finished the previous one. Batch b runs queries
// first_query[b] + i. Batches flagged in `timed` add to the totals. Returns
// false (and sets error) if a worker could not be started or threw.
bool run_batches(const Store& store, ModelKind model, std::uint64_t qps,
                 std::span<const GeoShape> queries, const std::vector<std::uint64_t>& first_query,
                 const std::vector<bool>& timed, const QueryOptions& options,
                 std::vector<WorkerTotals>& totals, std::string& error) {
  totals.assign(qps, WorkerTotals{});
  std::latch started(1);
  std::atomic<bool> abort{false};
  std::barrier sync(static_cast<std::ptrdiff_t>(qps));
  std::mutex error_mutex;

  auto worker = [&](std::uint64_t i) {
    started.wait();
    if (abort.load()) return;
    for (std::size_t b = 0; b < first_query.size(); ++b) {
      sync.arrive_and_wait();
      try {
        const GeoShape& shape = queries[(first_query[b] + i) % queries.size()];
        const QueryResult r = query(store, shape, model, store.config(), options);
        if (timed[b]) {
          totals[i].elapsed += r.elapsed_seconds;
          totals[i].counters += r.counters;
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (error.empty()) error = e.what();
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(qps);
  try {
    for (std::uint64_t i = 0; i < qps; ++i) threads.emplace_back(worker, i);
  } catch (const std::system_error& e) {
    error = std::string("cannot start worker ") + std::to_string(threads.size()) + ": " + e.what();
    abort.store(true);
  }
  started.count_down();
  for (auto& t : threads) t.join();
  return error.empty();
}

}  // namespace

void validate(const BenchMatrixSpec& spec) {
  auto ascending = [](const std::vector<std::uint64_t>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (spec.dss_list.empty() || spec.qps_list.empty() || spec.models.empty()) {
    throw ConfigError("benchmark matrix needs non-empty dss, qps and model lists");
  }
  if (!ascending(spec.dss_list) || !ascending(spec.qps_list)) {
    throw ConfigError("benchmark dss and qps lists must be strictly ascending");
  }
  if (spec.qps_list.front() == 0) throw ConfigError("qps must be >= 1");
  if (spec.options.trials == 0) throw ConfigError("benchmark needs at least one trial");
  validate(spec.workload);
}

std::uint64_t dataset_seed(std::uint64_t matrix_seed, std::uint64_t dss) {
  return rng::mix(matrix_seed ^ rng::mix(dss));
}

BenchRecord run_cell(const Store& store, ModelKind model, std::uint64_t qps,
                     std::span<const GeoShape> queries, const BenchOptions& options) {
  BenchRecord rec;
  rec.model = model;
  rec.dss = store.size();
  rec.qps = qps;
  if (qps == 0) throw DomainError("qps must be >= 1");
  if (queries.size() < qps) {
    throw DomainError("query mix has " + std::to_string(queries.size()) +
                      " queries, cell needs " + std::to_string(qps));
  }

  const std::uint64_t trials =
      options.counters_only ? 1
                            : std::max(options.trials, (options.min_samples + qps - 1) / qps);
  if (trials == 0) throw DomainError("trials must be >= 1");

  std::vector<std::uint64_t> first_query;
  std::vector<bool> timed;
  if (options.warmup && !options.counters_only) {
    first_query.push_back(0);
    timed.push_back(false);
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    first_query.push_back(t * qps);
    timed.push_back(true);
  }

  std::vector<WorkerTotals> totals;
  std::string error;
  if (!run_batches(store, model, qps, queries, first_query, timed, options.query, totals, error)) {
    rec.failed = true;
    rec.error = error;
    return rec;
  }

  double elapsed_sum = 0.0;
  double scanned_sum = 0.0;
  double issued_sum = 0.0;
  for (const auto& w : totals) {
    elapsed_sum += w.elapsed;
    scanned_sum += static_cast<double>(w.counters.entries_scanned);
    issued_sum += static_cast<double>(w.counters.queries_issued);
  }

  const double n = static_cast<double>(trials * qps);
  rec.trials = trials;
  rec.atd_seconds =
      options.counters_only ? std::numeric_limits<double>::quiet_NaN() : elapsed_sum / n;
  rec.scanned_mean = scanned_sum / n;
  rec.issued_mean = issued_sum / n;
  return rec;
}

std::vector<BenchRecord> run_matrix(const BenchMatrixSpec& spec,
                                    const std::function<void(const BenchRecord&)>& on_record) {
  validate(spec);

  WorkloadSpec query_spec = spec.workload;
  query_spec.seed = spec.seed;
  if (query_spec.query_count == 0) query_spec.query_count = spec.qps_list.back();
  const std::vector<GeoShape> queries = generate_queries(query_spec);

  std::vector<BenchRecord> records;
  for (std::uint64_t dss : spec.dss_list) {
    WorkloadSpec data_spec = spec.workload;
    data_spec.dss = dss;
    data_spec.seed = dataset_seed(spec.seed, dss);
    const Store store = Store::build(generate_entities(data_spec), spec.workload.cfg);

    for (ModelKind model : spec.models) {
      for (std::uint64_t qps : spec.qps_list) {
        BenchRecord rec;
        try {
          rec = run_cell(store, model, qps, queries, spec.options);
        } catch (const std::exception& e) {
          rec.model = model;
          rec.dss = dss;
          rec.qps = qps;
          rec.failed = true;
          rec.error = e.what();
        }
        if (on_record) on_record(rec);
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

void write_bench_header(std::ostream& os) { os << kBenchCsvHeader << '\n'; }

void write_bench_row(std::ostream& os, const BenchRecord& r) {
  using text::format_double;
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  os << to_string(r.model) << ',' << r.dss << ',' << r.qps << ','
     << format_double(r.failed ? nan : r.atd_seconds) << ',' << (r.failed ? 0 : r.trials) << ','
     << format_double(r.failed ? nan : r.scanned_mean) << ','
     << format_double(r.failed ? nan : r.issued_mean) << '\n';
  os.flush();
}

std::vector<BenchRecord> parse_bench_csv(const std::string& csv) {
  auto lines = text::split(csv, '\n');
  while (!lines.empty() && text::trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty() || text::trim(lines.front()) != kBenchCsvHeader) {
    throw ParseError(std::string("results CSV must start with header '") + kBenchCsvHeader + "'");
  }
  std::vector<BenchRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = text::trim(lines[i]);
    if (line.empty()) continue;
    const auto f = text::split(line, ',');
    if (f.size() != 7) {
      throw ParseError("results line " + std::to_string(i + 1) + ": expected 7 fields");
    }
    try {
      BenchRecord r;
      r.model = parse_model(text::trim(f[0]));
      r.dss = text::parse_uint(f[1]);
      r.qps = text::parse_uint(f[2]);
      r.atd_seconds = text::parse_double(f[3]);
      r.trials = text::parse_uint(f[4]);
      r.scanned_mean = text::parse_double(f[5]);
      r.issued_mean = text::parse_double(f[6]);
      r.failed = r.trials == 0;
      out.push_back(r);
    } catch (const ParseError& e) {
      throw ParseError("results line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace gaia
