#pragma once

// Evaluation of benchmark matrices: single-query efficiency (SQE),
// concurrent-query efficiency along the DSS/QPS diagonal (CQE), and
// performance uniformity (PUE) by least-squares model selection.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gaia/bench.hpp"
#include "gaia/query.hpp"

namespace gaia {

enum class FitFamily { Constant, Logarithmic, Linear, Exponential };

std::string_view to_string(FitFamily family);

/// Least-squares fit of one family.
///   Constant     y = a
///   Linear       y = a*x + b
///   Logarithmic  y = a*ln(b*x)   (linearized as a*ln(x) + k, b = exp(k/a))
///   Exponential  y = a*exp(b*x)  (linearized as ln y = ln a + b*x)
/// sse is always measured on the original ys.
struct FitResult {
  FitFamily family = FitFamily::Constant;
  double a = 0.0;
  double b = 0.0;
  /// Logarithmic only: intercept k of the linearized form. Carries the fit
  /// when a == 0, where b is undefined and reported as NaN.
  double k = 0.0;
  double sse = 0.0;
  double r_squared = 0.0;
  std::size_t n = 0;

  double predict(double x) const;
};

FitResult fit_constant(std::span<const double> xs, std::span<const double> ys);
/// Throws FitError for fewer than 2 points or all-equal xs.
FitResult fit_linear(std::span<const double> xs, std::span<const double> ys);
/// As fit_linear; additionally throws DomainError for any x <= 0.
FitResult fit_log(std::span<const double> xs, std::span<const double> ys);
/// Empty when some y <= 0 (the family is skipped, not an error).
std::optional<FitResult> fit_exponential(std::span<const double> xs, std::span<const double> ys);

/// Verdicts of the uniformity evaluation.
enum class PueVerdict { Constant, Logarithmic, Linear, Exponential, QuasiRandom };

std::string_view to_string(PueVerdict verdict);

struct PueOptions {
  /// Best fit below this coefficient of determination -> QuasiRandom.
  double min_r_squared = 0.5;
  /// Coefficient of variation of ys at or below which the series counts as
  /// quasi-constant regardless of the other fits.
  double quasi_constant_cv = 0.1;
};

struct PueResult {
  PueVerdict verdict = PueVerdict::QuasiRandom;
  /// Fit with the smallest sse; ties go to the family listed first in FitFamily.
  FitResult best;
  std::vector<FitResult> fits;
};

/// Selects the family that explains (x, y) best. Requires >= 4 points
/// (IncompleteDataError otherwise) and distinct positive xs.
PueResult pue_classify(std::span<const double> xs, std::span<const double> ys,
                       const PueOptions& options = {});

/// Which record field the evaluation reads as "y".
enum class Metric { Atd, Scanned, Issued };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view name);
double metric_value(const BenchRecord& record, Metric metric);

/// Mean of the qps = 1 column per model. Throws IncompleteDataError naming the
/// model if any of its DSS rows lacks a qps = 1 cell.
std::map<ModelKind, double> sqe(std::span<const BenchRecord> records, Metric metric = Metric::Atd);

/// Cells with dss == ratio * qps per model, ascending by dss. Throws
/// IncompleteDataError when a model has no such cell.
std::map<ModelKind, std::vector<std::pair<std::uint64_t, double>>> cqe(
    std::span<const BenchRecord> records, std::uint64_t ratio = 10, Metric metric = Metric::Atd);

/// (dss, value) points at one qps for one model, ascending by dss.
std::vector<std::pair<std::uint64_t, double>> series(std::span<const BenchRecord> records,
                                                     ModelKind model, std::uint64_t qps,
                                                     Metric metric = Metric::Atd);

/// Static description of how each model labels its data.
struct ModelTraits {
  std::string_view labeling;
  std::string_view data_type;
  std::string_view method;
};
ModelTraits traits_of(ModelKind model);

struct ModelEvaluation {
  ModelKind model = ModelKind::Gaia;
  double sqe = 0.0;
  std::vector<std::pair<std::uint64_t, double>> cqe_points;
  /// Mean over the diagonal cells.
  double cqe_mean = 0.0;
  PueResult pue;
  std::vector<std::pair<std::uint64_t, double>> pue_points;
};

struct ReportOptions {
  Metric metric = Metric::Atd;
  std::uint64_t cqe_ratio = 10;
  std::uint64_t pue_qps = 1;
  PueOptions pue;
};

struct EvaluationReport {
  Metric metric = Metric::Atd;
  /// Ordered Projection, RAW, GRID, GAIA; only models present in the input.
  std::vector<ModelEvaluation> models;
};

/// Throws IncompleteDataError for empty input or missing SQE / CQE / PUE cells.
EvaluationReport report(std::span<const BenchRecord> records, const ReportOptions& options = {});

void write_report_text(std::ostream& os, const EvaluationReport& report);
void write_report_csv(std::ostream& os, const EvaluationReport& report);
/// Writes <dir>/<model>_pue.csv and <dir>/<model>_cqe.csv with x,y,fitted_y.
void write_plot_data(const std::string& dir, const EvaluationReport& report);

/// ATD-table layout: header `dss,<qps>,<qps>,...`, one row per DSS.
/// Records get trials = 1 and NaN counters.
std::vector<BenchRecord> parse_atd_table(const std::string& text, ModelKind model);

}  // namespace gaia
