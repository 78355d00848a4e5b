#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ibcsplit/integrators.hpp"
#include "ibcsplit/presets.hpp"

namespace ibc {

enum class DataMode { from_trace, explicit_values };

struct FaceSpec {
  Side side = Side::left;
  double alpha = 1.0;
  double beta = 0.0;
  DataMode mode = DataMode::from_trace;
  std::vector<double> values;  // explicit mode: one constant or per-node samples
};

/// Declarative convergence-study input. Domain is the unit interval/square;
/// everything else is configurable (see the config schema in the README).
struct ExperimentSpec {
  std::string name;  // report and file stem
  int dimension = 1;
  Eigen::Index n_interior_x = 499;
  Eigen::Index n_interior_y = 0;
  std::vector<FaceSpec> faces;
  ReactionTerm reaction = ReactionTerm::square();
  std::string initial_preset;
  double t_end = 0.5;
  std::vector<double> taus;  // strictly decreasing, all positive
  std::vector<SchemeKind> schemes;
  ReferenceConfig reference;
};

/// The preset's defaults as a fully populated spec.
ExperimentSpec spec_from_preset(std::string_view id);

/// Parse and validate a JSON config file; unknown keys are rejected and
/// validation failures name the offending field.
ExperimentSpec load_config(const std::filesystem::path& path);

/// Everything assembled once per study: grid, operator, matrix-function
/// plan, sampled initial state, and the canonical serialization that keys
/// the reference cache.
struct PreparedExperiment {
  DiscreteOperator op;
  Plan plan;
  Eigen::VectorXd u0;
  ReactionTerm reaction;
  double t_end = 0.0;
  std::string canonical;
  Eigen::Index nx = 0, ny = 0;  // unknowns per direction (ny = 0 in 1D)
  double hx = 0.0, hy = 0.0;
};

PreparedExperiment prepare_experiment(const ExperimentSpec& spec);

/// Per-row pairwise orders (log ratio between consecutive rows) plus the
/// least-squares tail slope over the 4 smallest admissible tau. Rows with
/// error at or below the 1e-12 floor are excluded from both.
struct OrderEstimate {
  std::vector<std::optional<double>> pairwise;  // aligned with input rows; [0] empty
  std::vector<bool> admissible;                 // error above floor
  double tail_slope = std::numeric_limits<double>::quiet_NaN();
};

constexpr double order_error_floor = 1e-12;

OrderEstimate estimate_order(const std::vector<std::pair<double, double>>& tau_error);

struct SchemeSeries {
  SchemeKind scheme = SchemeKind::classic_strang;
  std::vector<double> taus;
  std::vector<double> errors;         // NaN where the run failed
  std::vector<std::string> failures;  // empty string = success
  OrderEstimate order;
};

struct ReportMeta {
  std::string name;
  int dimension = 1;
  Eigen::Index nx = 0, ny = 0;
  double hx = 0.0, hy = 0.0;
  std::string reaction;
  double t_end = 0.0;
  double ref_abs_tol = 0.0, ref_rel_tol = 0.0;
  bool reference_from_cache = false;
  double reference_seconds = 0.0;
  double total_seconds = 0.0;
};

struct ConvergenceReport {
  ReportMeta meta;
  std::vector<SchemeSeries> series;
};

struct StudyOptions {
  std::filesystem::path cache_dir;  // empty disables the cache
  bool use_cache = true;
};

/// Assemble once, obtain the reference endpoint (cache or solve), sweep all
/// (scheme, tau) combinations, and estimate orders. A blow-up in one run is
/// recorded on that row without aborting the others; a reference failure
/// aborts the study.
ConvergenceReport run_convergence_study(const ExperimentSpec& spec,
                                        const StudyOptions& opts = {});

/// Write per-scheme tables (csv or json), a summary json, and a plot-data
/// file (tau vs error per scheme, log-log ready). Returns the paths.
std::vector<std::filesystem::path> emit_report(const ConvergenceReport& report,
                                               std::string_view format,
                                               const std::filesystem::path& out_dir);

/// Re-read a summary file written by emit_report.
ConvergenceReport load_report(const std::filesystem::path& summary_json);

}  // namespace ibc
