#include "gaia/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "gaia/errors.hpp"
#include "gaia/text_io.hpp"

namespace gaia {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_sizes(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw FitError("xs and ys differ in length");
  if (xs.size() < 2) throw FitError("a fit needs at least 2 points");
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double total_sum_of_squares(std::span<const double> ys) {
  const double m = mean_of(ys);
  double sst = 0.0;
  for (double y : ys) sst += (y - m) * (y - m);
  return sst;
}

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
};

Line least_squares_line(std::span<const double> xs, std::span<const double> ys) {
  const double xm = mean_of(xs);
  const double ym = mean_of(ys);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xm) * (xs[i] - xm);
    sxy += (xs[i] - xm) * (ys[i] - ym);
  }
  if (sxx == 0.0) throw FitError("degenerate fit: all xs are equal");
  const double slope = sxy / sxx;
  return {slope, ym - slope * xm};
}

void finish(FitResult& fit, std::span<const double> xs, std::span<const double> ys) {
  fit.n = xs.size();
  fit.sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - fit.predict(xs[i]);
    fit.sse += r * r;
  }
  const double sst = total_sum_of_squares(ys);
  fit.r_squared = sst > 0.0 ? 1.0 - fit.sse / sst : 1.0;
}

bool usable(const BenchRecord& r, Metric metric) {
  return !r.failed && !std::isnan(metric_value(r, metric));
}

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string describe_fit(const FitResult& f) {
  switch (f.family) {
    case FitFamily::Constant: return "y = " + number(f.a);
    case FitFamily::Linear: return "y = " + number(f.a) + "*x + " + number(f.b);
    case FitFamily::Logarithmic:
      if (f.a == 0.0) return "y = " + number(f.k);
      return "y = " + number(f.a) + "*ln(" + number(f.b) + "*x)";
    case FitFamily::Exponential: return "y = " + number(f.a) + "*exp(" + number(f.b) + "*x)";
  }
  return "?";
}

const FitResult* fit_of(const PueResult& pue, FitFamily family) {
  for (const auto& f : pue.fits) {
    if (f.family == family) return &f;
  }
  return nullptr;
}

std::vector<double> firsts(const std::vector<std::pair<std::uint64_t, double>>& pts) {
  std::vector<double> out;
  for (const auto& p : pts) out.push_back(static_cast<double>(p.first));
  return out;
}

std::vector<double> seconds(const std::vector<std::pair<std::uint64_t, double>>& pts) {
  std::vector<double> out;
  for (const auto& p : pts) out.push_back(p.second);
  return out;
}

}  // namespace

double FitResult::predict(double x) const {
  switch (family) {
    case FitFamily::Constant: return a;
    case FitFamily::Linear: return a * x + b;
    case FitFamily::Logarithmic: return a * std::log(x) + k;
    case FitFamily::Exponential: return a * std::exp(b * x);
  }
  return kNaN;
}

std::string_view to_string(FitFamily family) {
  switch (family) {
    case FitFamily::Constant: return "constant";
    case FitFamily::Logarithmic: return "logarithmic";
    case FitFamily::Linear: return "linear";
    case FitFamily::Exponential: return "exponential";
  }
  return "?";
}

std::string_view to_string(PueVerdict verdict) {
  switch (verdict) {
    case PueVerdict::Constant: return "constant";
    case PueVerdict::Logarithmic: return "logarithmic";
    case PueVerdict::Linear: return "linear";
    case PueVerdict::Exponential: return "exponential";
    case PueVerdict::QuasiRandom: return "quasi-random";
  }
  return "?";
}

FitResult fit_constant(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || ys.empty()) throw FitError("constant fit needs matching, non-empty xs and ys");
  FitResult fit;
  fit.family = FitFamily::Constant;
  fit.a = mean_of(ys);
  finish(fit, xs, ys);
  return fit;
}

FitResult fit_linear(std::span<const double> xs, std::span<const double> ys) {
  check_sizes(xs, ys);
  const Line line = least_squares_line(xs, ys);
  FitResult fit;
  fit.family = FitFamily::Linear;
  fit.a = line.slope;
  fit.b = line.intercept;
  finish(fit, xs, ys);
  return fit;
}

FitResult fit_log(std::span<const double> xs, std::span<const double> ys) {
  check_sizes(xs, ys);
  std::vector<double> lx;
  lx.reserve(xs.size());
  for (double x : xs) {
    if (!(x > 0.0)) throw DomainError("logarithmic fit needs x > 0, got " + number(x));
    lx.push_back(std::log(x));
  }
  const Line line = least_squares_line(lx, ys);
  FitResult fit;
  fit.family = FitFamily::Logarithmic;
  fit.a = line.slope;
  fit.k = line.intercept;
  fit.b = fit.a != 0.0 ? std::exp(fit.k / fit.a) : kNaN;
  finish(fit, xs, ys);
  return fit;
}

std::optional<FitResult> fit_exponential(std::span<const double> xs, std::span<const double> ys) {
  check_sizes(xs, ys);
  std::vector<double> ly;
  ly.reserve(ys.size());
  for (double y : ys) {
    if (!(y > 0.0)) return std::nullopt;
    ly.push_back(std::log(y));
  }
  const Line line = least_squares_line(xs, ly);
  FitResult fit;
  fit.family = FitFamily::Exponential;
  fit.a = std::exp(line.intercept);
  fit.b = line.slope;
  finish(fit, xs, ys);
  return fit;
}

PueResult pue_classify(std::span<const double> xs, std::span<const double> ys,
                       const PueOptions& options) {
  if (xs.size() != ys.size()) throw FitError("xs and ys differ in length");
  if (xs.size() < 4) {
    throw IncompleteDataError("uniformity evaluation needs at least 4 points, got " +
                              std::to_string(xs.size()));
  }

  PueResult out;
  out.fits.push_back(fit_constant(xs, ys));
  out.fits.push_back(fit_log(xs, ys));
  out.fits.push_back(fit_linear(xs, ys));
  if (auto e = fit_exponential(xs, ys)) out.fits.push_back(*e);

  // Fits are listed simplest first; a later family has to beat the incumbent
  // by more than rounding noise to take over.
  const double tol = 1e-12 * std::max(total_sum_of_squares(ys), std::numeric_limits<double>::min());
  out.best = out.fits.front();
  for (const auto& f : out.fits) {
    if (f.sse < out.best.sse - tol) out.best = f;
  }

  const double m = mean_of(ys);
  const double sd = std::sqrt(total_sum_of_squares(ys) / static_cast<double>(ys.size()));
  const bool quasi_constant = sd == 0.0 || (m != 0.0 && sd / std::abs(m) <= options.quasi_constant_cv);
  if (quasi_constant) {
    out.verdict = PueVerdict::Constant;
    out.best = out.fits.front();
    return out;
  }
  if (out.best.r_squared < options.min_r_squared) {
    out.verdict = PueVerdict::QuasiRandom;
    return out;
  }
  switch (out.best.family) {
    case FitFamily::Constant: out.verdict = PueVerdict::Constant; break;
    case FitFamily::Logarithmic: out.verdict = PueVerdict::Logarithmic; break;
    case FitFamily::Linear: out.verdict = PueVerdict::Linear; break;
    case FitFamily::Exponential: out.verdict = PueVerdict::Exponential; break;
  }
  return out;
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Atd: return "atd";
    case Metric::Scanned: return "scanned";
    case Metric::Issued: return "issued";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  if (name == "atd") return Metric::Atd;
  if (name == "scanned") return Metric::Scanned;
  if (name == "issued") return Metric::Issued;
  throw ParseError("unknown metric '" + std::string(name) + "' (atd|scanned|issued)");
}

double metric_value(const BenchRecord& record, Metric metric) {
  switch (metric) {
    case Metric::Atd: return record.atd_seconds;
    case Metric::Scanned: return record.scanned_mean;
    case Metric::Issued: return record.issued_mean;
  }
  return kNaN;
}

std::map<ModelKind, double> sqe(std::span<const BenchRecord> records, Metric metric) {
  std::map<ModelKind, std::set<std::uint64_t>> dss_of;
  std::map<ModelKind, std::map<std::uint64_t, double>> column;
  for (const auto& r : records) {
    dss_of[r.model].insert(r.dss);
    if (r.qps == 1 && usable(r, metric)) column[r.model][r.dss] = metric_value(r, metric);
  }
  if (dss_of.empty()) throw IncompleteDataError("no records to evaluate");

  std::map<ModelKind, double> out;
  for (const auto& [model, all_dss] : dss_of) {
    const auto& col = column[model];
    for (std::uint64_t dss : all_dss) {
      if (col.find(dss) == col.end()) {
        throw IncompleteDataError(std::string(display_name(model)) + ": no usable qps=1 " +
                                  std::string(to_string(metric)) + " value at dss=" +
                                  std::to_string(dss));
      }
    }
    double sum = 0.0;
    for (const auto& [dss, v] : col) sum += v;
    out[model] = sum / static_cast<double>(col.size());
  }
  return out;
}

std::map<ModelKind, std::vector<std::pair<std::uint64_t, double>>> cqe(
    std::span<const BenchRecord> records, std::uint64_t ratio, Metric metric) {
  std::map<ModelKind, std::vector<std::pair<std::uint64_t, double>>> out;
  std::set<ModelKind> models;
  for (const auto& r : records) {
    models.insert(r.model);
    if (usable(r, metric) && r.dss == ratio * r.qps) {
      out[r.model].emplace_back(r.dss, metric_value(r, metric));
    }
  }
  if (models.empty()) throw IncompleteDataError("no records to evaluate");
  for (ModelKind m : models) {
    auto it = out.find(m);
    if (it == out.end() || it->second.empty()) {
      throw IncompleteDataError(std::string(display_name(m)) + ": no diagonal cells with dss/qps=" +
                                std::to_string(ratio));
    }
    std::sort(it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<std::pair<std::uint64_t, double>> series(std::span<const BenchRecord> records,
                                                     ModelKind model, std::uint64_t qps,
                                                     Metric metric) {
  std::vector<std::pair<std::uint64_t, double>> out;
  for (const auto& r : records) {
    if (r.model == model && r.qps == qps && usable(r, metric)) {
      out.emplace_back(r.dss, metric_value(r, metric));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ModelTraits traits_of(ModelKind model) {
  switch (model) {
    case ModelKind::Projection:
      return {"One geometric coordinate", "One Value Integer (1D)", "Projection"};
    case ModelKind::Raw: return {"Geometric coordinates", "Two Values Integers (2D)", "None"};
    case ModelKind::Grid: return {"Cell coordinates", "Two Values Integers (2D)", "Scaling"};
    case ModelKind::Gaia:
      return {"Hash transformation function", "One Value Integer (1D)", "Scaling and Projection"};
  }
  return {};
}

EvaluationReport report(std::span<const BenchRecord> records, const ReportOptions& options) {
  if (records.empty()) throw IncompleteDataError("no records to evaluate");
  const auto sqe_values = sqe(records, options.metric);
  const auto cqe_values = cqe(records, options.cqe_ratio, options.metric);

  EvaluationReport out;
  out.metric = options.metric;
  for (ModelKind model :
       {ModelKind::Projection, ModelKind::Raw, ModelKind::Grid, ModelKind::Gaia}) {
    const auto s = sqe_values.find(model);
    if (s == sqe_values.end()) continue;
    ModelEvaluation ev;
    ev.model = model;
    ev.sqe = s->second;
    ev.cqe_points = cqe_values.at(model);
    double sum = 0.0;
    for (const auto& p : ev.cqe_points) sum += p.second;
    ev.cqe_mean = sum / static_cast<double>(ev.cqe_points.size());
    ev.pue_points = series(records, model, options.pue_qps, options.metric);
    try {
      ev.pue = pue_classify(firsts(ev.pue_points), seconds(ev.pue_points), options.pue);
    } catch (const IncompleteDataError& e) {
      throw IncompleteDataError(std::string(display_name(model)) + ": " + e.what());
    }
    out.models.push_back(std::move(ev));
  }
  return out;
}

void write_report_text(std::ostream& os, const EvaluationReport& rep) {
  std::vector<std::string> header{""};
  for (const auto& m : rep.models) header.emplace_back(display_name(m.model));

  const std::string unit = rep.metric == Metric::Atd ? " (sec)" : "";
  const std::string metric(to_string(rep.metric));
  std::vector<std::vector<std::string>> rows;
  auto row = [&](std::string label, auto cell) {
    std::vector<std::string> r{std::move(label)};
    for (const auto& m : rep.models) r.push_back(cell(m));
    rows.push_back(std::move(r));
  };
  row("Data labeling technique", [](const ModelEvaluation& m) { return std::string(traits_of(m.model).labeling); });
  row("Data type", [](const ModelEvaluation& m) { return std::string(traits_of(m.model).data_type); });
  row("Method used", [](const ModelEvaluation& m) { return std::string(traits_of(m.model).method); });
  row("SQE-" + metric + unit, [](const ModelEvaluation& m) { return number(m.sqe); });
  row("CQE-" + metric + unit + " mean", [](const ModelEvaluation& m) { return number(m.cqe_mean); });
  row("PUE family", [](const ModelEvaluation& m) { return std::string(to_string(m.pue.verdict)); });
  row("PUE best fit", [](const ModelEvaluation& m) { return describe_fit(m.pue.best); });
  row("PUE best fit R^2", [](const ModelEvaluation& m) { return number(m.pue.best.r_squared); });

  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  auto emit = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      os << std::left << std::setw(static_cast<int>(width[c])) << r[c];
      os << (c + 1 == r.size() ? "\n" : "  ");
    }
  };
  emit(header);
  for (const auto& r : rows) emit(r);

  os << "\nCQE diagonal cells (dss, " << metric << "):\n";
  for (const auto& m : rep.models) {
    os << "  " << display_name(m.model) << ":";
    for (const auto& [dss, v] : m.cqe_points) os << " (" << dss << ", " << number(v) << ")";
    os << '\n';
  }
  os << "\nPUE fit sse per family:\n";
  for (const auto& m : rep.models) {
    os << "  " << display_name(m.model) << ":";
    for (const auto& f : m.pue.fits) os << ' ' << to_string(f.family) << '=' << number(f.sse);
    os << '\n';
  }
}

void write_report_csv(std::ostream& os, const EvaluationReport& rep) {
  using text::format_double;
  os << "model,labeling,data_type,method,metric,sqe,cqe_mean,pue_family,best_family,best_a,"
        "best_b,best_sse,best_r2,sse_constant,sse_logarithmic,sse_linear,sse_exponential\n";
  for (const auto& m : rep.models) {
    const auto t = traits_of(m.model);
    os << to_string(m.model) << ',' << t.labeling << ',' << t.data_type << ',' << t.method << ','
       << to_string(rep.metric) << ',' << format_double(m.sqe) << ',' << format_double(m.cqe_mean)
       << ',' << to_string(m.pue.verdict) << ',' << to_string(m.pue.best.family) << ','
       << format_double(m.pue.best.a) << ',' << format_double(m.pue.best.b) << ','
       << format_double(m.pue.best.sse) << ',' << format_double(m.pue.best.r_squared);
    for (FitFamily f : {FitFamily::Constant, FitFamily::Logarithmic, FitFamily::Linear,
                        FitFamily::Exponential}) {
      const FitResult* fit = fit_of(m.pue, f);
      os << ',' << (fit ? format_double(fit->sse) : std::string("nan"));
    }
    os << '\n';
  }
}

void write_plot_data(const std::string& dir, const EvaluationReport& rep) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write = [](const fs::path& path, const std::vector<std::pair<std::uint64_t, double>>& pts,
                  const std::optional<FitResult>& fit) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << "x,y,fitted_y\n";
    for (const auto& [x, y] : pts) {
      const double fx = fit ? fit->predict(static_cast<double>(x)) : y;
      out << x << ',' << text::format_double(y) << ',' << text::format_double(fx) << '\n';
    }
  };
  for (const auto& m : rep.models) {
    const std::string name(to_string(m.model));
    write(fs::path(dir) / (name + "_pue.csv"), m.pue_points, m.pue.best);

    std::optional<FitResult> cqe_fit;
    if (m.cqe_points.size() >= 2) {
      const auto xs = firsts(m.cqe_points);
      const auto ys = seconds(m.cqe_points);
      try {
        std::vector<FitResult> fits{fit_linear(xs, ys), fit_log(xs, ys)};
        if (auto e = fit_exponential(xs, ys)) fits.push_back(*e);
        cqe_fit = *std::min_element(fits.begin(), fits.end(), [](const auto& a, const auto& b) {
          return a.sse < b.sse;
        });
      } catch (const Error&) {
        cqe_fit.reset();
      }
    }
    write(fs::path(dir) / (name + "_cqe.csv"), m.cqe_points, cqe_fit);
  }
}

std::vector<BenchRecord> parse_atd_table(const std::string& csv, ModelKind model) {
  auto lines = text::split(csv, '\n');
  std::size_t i = 0;
  while (i < lines.size() && text::trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw ParseError("ATD table is empty");
  const auto head = text::split(text::trim(lines[i]), ',');
  if (head.size() < 2 || text::trim(head[0]) != "dss") {
    throw ParseError("ATD table header must be 'dss,<qps>,...'");
  }
  std::vector<std::uint64_t> qps;
  for (std::size_t c = 1; c < head.size(); ++c) qps.push_back(text::parse_uint(head[c]));

  std::vector<BenchRecord> out;
  for (++i; i < lines.size(); ++i) {
    const auto line = text::trim(lines[i]);
    if (line.empty()) continue;
    const auto f = text::split(line, ',');
    if (f.size() != head.size()) {
      throw ParseError("ATD table line " + std::to_string(i + 1) + ": expected " +
                       std::to_string(head.size()) + " fields");
    }
    const std::uint64_t dss = text::parse_uint(f[0]);
    for (std::size_t c = 1; c < f.size(); ++c) {
      BenchRecord r;
      r.model = model;
      r.dss = dss;
      r.qps = qps[c - 1];
      r.atd_seconds = text::parse_double(f[c]);
      r.trials = 1;
      r.scanned_mean = kNaN;
      r.issued_mean = kNaN;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace gaia
