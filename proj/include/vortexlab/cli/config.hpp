#pragma once

// Run configuration: a JSON tree with a fixed key set per experiment kind.
//
//   {
//     "experiment": "classical",
//     "geometry": {"lx": 1, "ly": 1},
//     "grid": {"nx": 128, "ny": 128},
//     "epsilon": 0.2,
//     "divisor": [[0.5, 0.5, 1]],
//     "solver": {...}, "diagnostics": {...}, "output": "run"
//   }
//
// Keys that do not apply to the experiment kind are rejected, so a parsed
// config carries defaults in every field it does not use and the echo (which
// lists every applicable key) parses back to an equal config.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vortexlab/kw/solver.hpp"
#include "vortexlab/vortex/sweep.hpp"

namespace vortexlab::cli {

enum class ExperimentKind { Kw, Classical, Mixed, Generalized, Sweep };
std::string_view to_string(ExperimentKind kind) noexcept;
/// InvalidArgument for an unknown name.
ExperimentKind experiment_from_string(std::string_view name);

struct PointEntry {
  double x = 0.0;
  double y = 0.0;
  int m = 0;
  friend bool operator==(const PointEntry&, const PointEntry&) = default;
};

/// A Kazdan-Warner coefficient: a constant, or scale * exp(u_D) of an
/// effective divisor (a vanishing density with mean(scale) normalisation).
struct CoefficientEntry {
  double constant = 1.0;
  std::vector<PointEntry> divisor;
  bool from_divisor = false;
  double scale = 1.0;
  friend bool operator==(const CoefficientEntry&, const CoefficientEntry&) = default;
};

struct KwTermEntry {
  CoefficientEntry coefficient;
  double rate = 1.0;
  friend bool operator==(const KwTermEntry&, const KwTermEntry&) = default;
};

struct KwEntry {
  std::vector<KwTermEntry> plus;
  std::vector<KwTermEntry> minus;
  double w = 0.0;
  friend bool operator==(const KwEntry&, const KwEntry&) = default;
};

struct GeneralizedTermEntry {
  std::vector<PointEntry> divisor;
  int weight = 1;
  double scale = 1.0;
  friend bool operator==(const GeneralizedTermEntry&, const GeneralizedTermEntry&) = default;
};

struct ScheduleEntry {
  std::vector<double> epsilons;
  std::string grid_rule = "core_resolving";  // or "fixed" (uses the grid block)
  std::size_t min_samples = 64;
  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

struct SolverEntry {
  double newton_tol = 1e-10;
  int max_newton = 60;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double cg_tol = 1e-12;
  bool adaptive_cg = true;
  int max_backtracks = 60;
  friend bool operator==(const SolverEntry&, const SolverEntry&) = default;
  kw::SolverConfig to_solver_config() const;
};

struct DiagnosticsEntry {
  double omega_radius = 0.15;
  std::optional<std::array<double, 2>> bump_radii;
  double order_r_min = 0.02;
  double order_r_max = 0.1;
  int order_radii = 16;
  int order_angles = 64;
  bool heatmaps = true;
  bool svg = true;
  friend bool operator==(const DiagnosticsEntry&, const DiagnosticsEntry&) = default;
};

struct RunConfig {
  ExperimentKind experiment = ExperimentKind::Classical;
  /// Family swept by a sweep run; for other kinds equal to the experiment.
  ExperimentKind family = ExperimentKind::Classical;
  double lx = 1.0;
  double ly = 1.0;
  std::size_t nx = 128;
  std::size_t ny = 128;
  double epsilon = 0.2;
  ScheduleEntry schedule;
  std::vector<PointEntry> divisor;
  std::vector<PointEntry> divisor_plus;
  std::vector<PointEntry> divisor_minus;
  double tau = 0.0;
  double scale_plus = 1.0;
  double scale_minus = 1.0;
  std::optional<double> degree;
  std::string normalization = "mean_one";
  std::vector<GeneralizedTermEntry> terms;
  KwEntry kw;
  SolverEntry solver;
  DiagnosticsEntry diagnostics;
  std::string output = "vortexlab-out";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates. `expected` is the subcommand: it fills in a missing
/// "experiment" key and must agree with a present one.
/// Errors: ParseError ("line L, column C: ..."), ValidationError.
RunConfig parse_config(std::string_view text,
                       std::optional<ExperimentKind> expected = std::nullopt);

/// Structural parse only (no module-level validation).
RunConfig parse_config_unchecked(std::string_view text,
                                 std::optional<ExperimentKind> expected = std::nullopt);

/// Every applicable key, defaults included, as pretty-printed JSON.
std::string echo_config(const RunConfig& config);

/// Checks every module-level invariant that can be decided before solving:
/// geometry and grid, divisors, Bradlow bounds, the generalized solvability
/// dichotomy, the schedule's core-resolution rule, solver and diagnostics
/// settings. Throws ValidationError naming the violated invariant.
void validate(const RunConfig& config);

/// The vortex spec of a classical, mixed or generalized config (or the swept
/// family of a sweep) at the given epsilon and grid.
vortex::VortexSpec make_spec(const RunConfig& config, double epsilon, const torus::GridSpec& grid);
kw::KWProblem make_kw_problem(const RunConfig& config);
kw::ContinuationSchedule make_schedule(const RunConfig& config);
vortex::DiagnosticsConfig make_diagnostics(const RunConfig& config);
torus::TorusGeometry make_geometry(const RunConfig& config);
torus::GridSpec make_grid(const RunConfig& config);

}  // namespace vortexlab::cli
