#include "gaia/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gaia/errors.hpp"
#include "gaia/workload.hpp"
#include "test_support.hpp"

namespace gaia {
namespace {

WorkloadSpec mix_spec(std::uint64_t dss, std::uint64_t queries) {
  WorkloadSpec s;
  s.dss = dss;
  s.seed = 21;
  s.cfg = testing::unit_grid();
  s.query_count = queries;
  s.r_min = 2;
  s.r_max = 15;
  return s;
}

TEST(RunCell, SmokeSingleQuery) {
  const auto spec = mix_spec(200, 4);
  const auto store = Store::build(generate_entities(spec), spec.cfg);
  const auto qs = generate_queries(spec);
  const auto r = run_cell(store, ModelKind::Gaia, 1, qs);
  EXPECT_FALSE(r.failed);
  EXPECT_GE(r.trials, 1u);
  EXPECT_GT(r.atd_seconds, 0.0);
  EXPECT_EQ(r.dss, 200u);
}

TEST(RunCell, CountersAreDeterministic) {
  const auto spec = mix_spec(5000, 16);
  const auto store = Store::build(generate_entities(spec), spec.cfg);
  const auto qs = generate_queries(spec);
  for (auto m : kAllModels) {
    const auto a = run_cell(store, m, 8, qs);
    const auto b = run_cell(store, m, 8, qs);
    EXPECT_EQ(a.scanned_mean, b.scanned_mean) << to_string(m);
    EXPECT_EQ(a.issued_mean, b.issued_mean) << to_string(m);
  }
}

TEST(RunCell, RawScansEverything) {
  const auto spec = mix_spec(10000, 4);
  const auto store = Store::build(generate_entities(spec), spec.cfg);
  const auto qs = generate_queries(spec);
  const auto r = run_cell(store, ModelKind::Raw, 4, qs);
  EXPECT_EQ(r.scanned_mean, 10000.0);
  EXPECT_EQ(r.issued_mean, 1.0);
}

TEST(RunCell, CountersOnlyMode) {
  const auto spec = mix_spec(300, 4);
  const auto store = Store::build(generate_entities(spec), spec.cfg);
  const auto qs = generate_queries(spec);
  BenchOptions o;
  o.counters_only = true;
  const auto r = run_cell(store, ModelKind::Grid, 2, qs, o);
  EXPECT_EQ(r.trials, 1u);
  EXPECT_TRUE(std::isnan(r.atd_seconds));
  EXPECT_GT(r.issued_mean, 0.0);
}

TEST(RunCell, MinSamplesRaisesTrialsOfSmallBatches) {
  const auto spec = mix_spec(100, 8);
  const auto store = Store::build(generate_entities(spec), spec.cfg);
  const auto qs = generate_queries(spec);
  BenchOptions o;
  o.trials = 2;
  o.min_samples = 7;
  EXPECT_EQ(run_cell(store, ModelKind::Gaia, 1, qs, o).trials, 7u);
  EXPECT_EQ(run_cell(store, ModelKind::Gaia, 3, qs, o).trials, 3u);
  EXPECT_EQ(run_cell(store, ModelKind::Gaia, 8, qs, o).trials, 2u);
  o.counters_only = true;
  EXPECT_EQ(run_cell(store, ModelKind::Gaia, 1, qs, o).trials, 1u);
}

TEST(RunCell, WorkerFailureMarksCellFailed) {
  const auto store = Store::build({}, testing::unit_grid());
  const std::vector<GeoShape> qs{Disc{{50, 50}, 5}, Disc{{900, 900}, 5}};
  const auto r = run_cell(store, ModelKind::Gaia, 2, qs);
  EXPECT_TRUE(r.failed);
  EXPECT_FALSE(r.error.empty());
  std::ostringstream os;
  write_bench_row(os, r);
  EXPECT_EQ(os.str(), "gaia,0,2,nan,0,nan,nan\n");
}

TEST(RunCell, RejectsShortQueryMix) {
  const auto store = Store::build({}, testing::unit_grid());
  const std::vector<GeoShape> qs{Disc{{50, 50}, 5}};
  EXPECT_THROW(run_cell(store, ModelKind::Gaia, 2, qs), DomainError);
}

TEST(RunMatrix, CardinalityAndStreaming) {
  BenchMatrixSpec spec;
  spec.dss_list = {10, 100, 1000};
  spec.qps_list = {1, 2};
  spec.options.trials = 1;
  spec.workload = mix_spec(0, 0);
  std::size_t streamed = 0;
  const auto rs = run_matrix(spec, [&](const BenchRecord&) { ++streamed; });
  EXPECT_EQ(rs.size(), 4u * 3u * 2u);
  EXPECT_EQ(streamed, rs.size());
  for (const auto& r : rs) EXPECT_FALSE(r.failed) << r.error;

  std::ostringstream os;
  write_bench_header(os);
  for (const auto& r : rs) write_bench_row(os, r);
  const auto parsed = parse_bench_csv(os.str());
  ASSERT_EQ(parsed.size(), rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    EXPECT_EQ(parsed[i].model, rs[i].model);
    EXPECT_EQ(parsed[i].dss, rs[i].dss);
    EXPECT_EQ(parsed[i].scanned_mean, rs[i].scanned_mean);
    EXPECT_EQ(parsed[i].atd_seconds, rs[i].atd_seconds);
  }

  spec.dss_list = {10};
  spec.qps_list = {1};
  spec.models = {ModelKind::Gaia};
  EXPECT_EQ(run_matrix(spec).size(), 1u);
}

TEST(RunMatrix, Validation) {
  BenchMatrixSpec spec;
  spec.dss_list = {};
  EXPECT_THROW(validate(spec), ConfigError);
  spec.dss_list = {100, 10};
  EXPECT_THROW(validate(spec), ConfigError);
  spec.dss_list = {10};
  spec.qps_list = {0};
  EXPECT_THROW(validate(spec), ConfigError);
  spec.qps_list = {1};
  spec.options.trials = 0;
  EXPECT_THROW(validate(spec), ConfigError);
}

TEST(BenchCsv, RejectsMalformedInput) {
  EXPECT_THROW(parse_bench_csv("model,dss\n"), ParseError);
  EXPECT_THROW(parse_bench_csv(std::string(kBenchCsvHeader) + "\ngaia,1,2\n"), ParseError);
  EXPECT_THROW(parse_bench_csv(std::string(kBenchCsvHeader) + "\nrtree,1,1,0.1,1,1,1\n"),
               ParseError);
}

TEST(DatasetSeed, DependsOnBothInputs) {
  EXPECT_EQ(dataset_seed(1, 100), dataset_seed(1, 100));
  EXPECT_NE(dataset_seed(1, 100), dataset_seed(1, 1000));
  EXPECT_NE(dataset_seed(1, 100), dataset_seed(2, 100));
}

}  // namespace
}  // namespace gaia
