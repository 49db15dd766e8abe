#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "gaia/analysis.hpp"
#include "gaia/bench.hpp"
#include "gaia/datastore.hpp"
#include "gaia/errors.hpp"
#include "gaia/geometry.hpp"
#include "gaia/grid.hpp"
#include "gaia/query.hpp"
#include "gaia/segmenter.hpp"
#include "gaia/text_io.hpp"
#include "gaia/workload.hpp"

namespace gaia::cli {

namespace {

/// Bad flag values discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalFlags {
  std::string grid_path;
  std::uint64_t seed = 1;
};

GridConfig grid_from(const GlobalFlags& g) {
  if (g.grid_path.empty()) return WorkloadSpec{}.cfg;
  return load_grid_config(g.grid_path);
}

template <class F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::uint64_t> decades_up_to(std::uint64_t first, std::uint64_t max) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = first; v <= max; v *= 10) {
    out.push_back(v);
    if (v > max / 10) break;
  }
  return out;
}

// generate ------------------------------------------------------------------

struct GenerateFlags {
  std::uint64_t dss = 0;
  std::string out;
};

int cmd_generate(const GlobalFlags& g, const GenerateFlags& f, std::ostream& out) {
  WorkloadSpec spec;
  spec.cfg = grid_from(g);
  spec.dss = f.dss;
  spec.seed = g.seed;
  const auto entities = generate_entities(spec);
  save_dataset(f.out, entities);
  out << "wrote " << entities.size() << " entities to " << f.out << '\n';
  return kOk;
}

// plan ----------------------------------------------------------------------

struct PlanFlags {
  std::string shape;
  std::string mode = "bounding";
};

int cmd_plan(const GlobalFlags& g, const PlanFlags& f, std::ostream& out) {
  const GeoShape shape = as_usage([&] { return parse_shape(f.shape); });
  const SpanMode mode = as_usage([&] { return parse_span_mode(f.mode); });
  write_plan(out, plan(shape, grid_from(g), mode));
  return kOk;
}

// query ---------------------------------------------------------------------

struct QueryFlags {
  std::string data;
  std::string model = "gaia";
  std::string shape;
  std::string mode = "bounding";
  bool exact = false;
  std::size_t fan_out = 0;
};

int cmd_query(const GlobalFlags& g, const QueryFlags& f, std::ostream& out) {
  const GeoShape shape = as_usage([&] { return parse_shape(f.shape); });
  const ModelKind model = as_usage([&] { return parse_model(f.model); });
  QueryOptions options;
  options.mode = as_usage([&] { return parse_span_mode(f.mode); });
  options.exact = f.exact;
  options.fan_out = f.fan_out;

  const GridConfig cfg = grid_from(g);
  const Store store = Store::build(load_dataset(f.data), cfg);
  const QueryResult r = query(store, shape, model, cfg, options);
  const auto ids = r.ids();

  out << "count " << ids.size() << '\n';
  out << "ids";
  for (EntityId id : ids) out << ' ' << id;
  out << '\n';
  out << "queries_issued " << r.counters.queries_issued << '\n';
  out << "entries_scanned " << r.counters.entries_scanned << '\n';
  out << "exact " << (r.exact ? "true" : "false") << '\n';
  out << "elapsed_seconds " << text::format_double(r.elapsed_seconds) << '\n';
  return kOk;
}

// bench ---------------------------------------------------------------------

struct BenchFlags {
  std::uint64_t dss_max = 1000000;
  std::uint64_t qps_max = 10000;
  std::string models = "raw,projection,grid,gaia";
  std::string out;
  std::uint64_t trials = 5;
  std::uint64_t min_samples = 0;
  double r_min = 10.0;
  double r_max = 50.0;
  std::string mode = "bounding";
  bool exact = false;
  bool counters_only = false;
};

int cmd_bench(const GlobalFlags& g, const BenchFlags& f, std::ostream& out, std::ostream& err) {
  BenchMatrixSpec spec;
  spec.seed = g.seed;
  spec.dss_list = decades_up_to(10, f.dss_max);
  spec.qps_list = decades_up_to(1, f.qps_max);
  if (spec.dss_list.empty()) throw UsageError("--dss-max must be >= 10");
  if (spec.qps_list.empty()) throw UsageError("--qps-max must be >= 1");
  spec.models.clear();
  for (auto name : text::split(f.models, ',')) {
    spec.models.push_back(as_usage([&] { return parse_model(text::trim(name)); }));
  }
  spec.options.trials = f.trials;
  spec.options.min_samples = f.min_samples;
  spec.options.counters_only = f.counters_only;
  spec.options.query.mode = as_usage([&] { return parse_span_mode(f.mode); });
  spec.options.query.exact = f.exact;
  spec.workload.cfg = grid_from(g);
  spec.workload.r_min = f.r_min;
  spec.workload.r_max = f.r_max;
  try {
    validate(spec);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  std::ofstream csv(f.out, std::ios::binary | std::ios::trunc);
  if (!csv) throw Error("cannot open '" + f.out + "' for writing");
  write_bench_header(csv);
  csv.flush();

  std::size_t failed = 0;
  const auto records = run_matrix(spec, [&](const BenchRecord& r) {
    write_bench_row(csv, r);
    if (r.failed) {
      ++failed;
      err << "cell " << to_string(r.model) << " dss=" << r.dss << " qps=" << r.qps
          << " failed: " << r.error << '\n';
    }
  });
  if (!csv) throw Error("write to '" + f.out + "' failed");
  out << "wrote " << records.size() << " records to " << f.out;
  if (failed > 0) out << " (" << failed << " failed)";
  out << '\n';
  return kOk;
}

// report --------------------------------------------------------------------

struct ReportFlags {
  std::vector<std::string> inputs;
  std::vector<std::string> tables;
  std::string metric = "atd";
  std::uint64_t ratio = 10;
  std::uint64_t pue_qps = 1;
  std::string out;
  std::string csv;
  std::string plot_dir;
};

int cmd_report(const ReportFlags& f, std::ostream& out) {
  if (f.inputs.empty() && f.tables.empty()) {
    throw UsageError("report needs --input and/or --table");
  }
  ReportOptions options;
  options.metric = as_usage([&] { return parse_metric(f.metric); });
  options.cqe_ratio = f.ratio;
  options.pue_qps = f.pue_qps;

  std::vector<BenchRecord> records;
  for (const auto& path : f.inputs) {
    auto r = parse_bench_csv(text::read_file(path));
    records.insert(records.end(), r.begin(), r.end());
  }
  for (const auto& spec : f.tables) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw UsageError("--table expects MODEL=PATH, got '" + spec + "'");
    const ModelKind model = as_usage([&] { return parse_model(spec.substr(0, eq)); });
    auto r = parse_atd_table(text::read_file(spec.substr(eq + 1)), model);
    records.insert(records.end(), r.begin(), r.end());
  }

  const EvaluationReport rep = report(records, options);
  std::ostringstream text_report;
  write_report_text(text_report, rep);
  if (f.out.empty()) {
    out << text_report.str();
  } else {
    text::write_file(f.out, text_report.str());
  }
  if (!f.csv.empty()) {
    std::ostringstream csv;
    write_report_csv(csv, rep);
    text::write_file(f.csv, csv.str());
  }
  if (!f.plot_dir.empty()) write_plot_data(f.plot_dir, rep);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geo-correlated range queries over an ordered key-value store", "gaia"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalFlags global;
  app.add_option("--grid", global.grid_path, "Grid config file (default: [0,1000]^2, cell 10)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", global.seed, "RNG seed");

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Write a seeded Poisson dataset CSV");
  generate->add_option("--dss", gen.dss, "Number of entities")->required();
  generate->add_option("--out", gen.out, "Output CSV path")->required();

  PlanFlags plan_flags;
  auto* plan_cmd = app.add_subcommand("plan", "Print the key segments of a shape");
  plan_cmd->add_option("--shape", plan_flags.shape, "disc:px,py,R | rect:x1,y1,x2,y2 | poly:x,y;...")
      ->required();
  plan_cmd->add_option("--mode", plan_flags.mode, "bounding | tight");

  QueryFlags qf;
  auto* query_cmd = app.add_subcommand("query", "Run one shape query against a dataset");
  query_cmd->add_option("--data", qf.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  query_cmd->add_option("--model", qf.model, "raw | projection | grid | gaia");
  query_cmd->add_option("--shape", qf.shape, "Shape literal")->required();
  query_cmd->add_option("--mode", qf.mode, "bounding | tight");
  query_cmd->add_flag("--exact", qf.exact, "Filter results to the exact shape");
  query_cmd->add_option("--fan-out", qf.fan_out, "Max concurrent segment scans (0 = all)");

  BenchFlags bf;
  auto* bench_cmd = app.add_subcommand("bench", "Run the DSS x QPS matrix and write results CSV");
  bench_cmd->add_option("--dss-max", bf.dss_max, "Largest data set size (decades from 10)");
  bench_cmd->add_option("--qps-max", bf.qps_max, "Largest batch size (decades from 1)");
  bench_cmd->add_option("--models", bf.models, "Comma-separated model list");
  bench_cmd->add_option("--out", bf.out, "Results CSV path")->required();
  bench_cmd->add_option("--trials", bf.trials, "Timed batches per cell");
  bench_cmd->add_option("--min-samples", bf.min_samples,
                        "Run extra batches until a cell has timed this many queries");
  bench_cmd->add_option("--r-min", bf.r_min, "Smallest query radius");
  bench_cmd->add_option("--r-max", bf.r_max, "Largest query radius");
  bench_cmd->add_option("--mode", bf.mode, "bounding | tight");
  bench_cmd->add_flag("--exact", bf.exact, "Post-filter GAIA/GRID results");
  bench_cmd->add_flag("--counters-only", bf.counters_only, "Skip timing; counters only");

  ReportFlags rf;
  auto* report_cmd = app.add_subcommand("report", "Evaluate a results CSV or reference tables");
  report_cmd->add_option("--input", rf.inputs, "Results CSV (repeatable)")->check(CLI::ExistingFile);
  report_cmd->add_option("--table", rf.tables, "MODEL=PATH reference table CSV (repeatable)");
  report_cmd->add_option("--metric", rf.metric, "atd | scanned | issued");
  report_cmd->add_option("--ratio", rf.ratio, "DSS/QPS ratio of the CQE diagonal");
  report_cmd->add_option("--pue-qps", rf.pue_qps, "QPS column used for PUE");
  report_cmd->add_option("--out", rf.out, "Text report path (default stdout)");
  report_cmd->add_option("--csv", rf.csv, "Report CSV path");
  report_cmd->add_option("--plot-dir", rf.plot_dir, "Directory for plot-data CSVs");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*generate) return cmd_generate(global, gen, out);
    if (*plan_cmd) return cmd_plan(global, plan_flags, out);
    if (*query_cmd) return cmd_query(global, qf, out);
    if (*bench_cmd) return cmd_bench(global, bf, out, err);
    if (*report_cmd) return cmd_report(rf, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace gaia::cli
