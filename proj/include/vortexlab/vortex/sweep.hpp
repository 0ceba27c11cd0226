#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vortexlab/error.hpp"
#include "vortexlab/kw/continuation.hpp"
#include "vortexlab/vortex/diagnostics.hpp"

namespace vortexlab::vortex {

struct DiagnosticsConfig {
  /// Omega is the torus minus discs of this radius around every mass point.
  double omega_radius = 0.15;
  /// Overrides default_bump_radii at every point and epsilon.
  std::optional<BumpRadii> bump_radii;
  double order_r_min = 0.02;  // raised to two grid cells when needed
  double order_r_max = 0.1;   // lowered to half the distance to the nearest other point
  OrderFitOptions order_fit;
  kw::SolverConfig solver;
};

struct PointDiagnostics {
  Point point;
  std::optional<double> expected_mass;
  BumpRadii radii;
  double curvature_mass;
  std::optional<double> order_fit;  // |phi| vanishing order, final epsilon only
};

struct DiagnosticsReport {
  double epsilon = 0.0;
  GridSpec grid = GridSpec::square(8);
  int newton_iterations = 0;
  double residual_sup = 0.0;
  bool energy_monotone = true;
  std::vector<PointDiagnostics> points;
  /// Mass of 1 - sum of bumps; points plus complement add up to the total.
  double complement_mass = 0.0;
  double total_mass = 0.0;  // int iLF / 2 pi
  /// Classical: sup over Omega of |1 - |phi|^2|. Otherwise sup over Omega of
  /// |f - f_0| with f_0 the eps = 0 limit profile.
  double sup_deviation = 0.0;
  IdentityResiduals identities{};
  kw::AprioriRow apriori;
  double solve_seconds = 0.0;
};

struct SweepReport {
  VortexKind kind = VortexKind::Classical;
  std::vector<DiagnosticsReport> rows;
  std::vector<kw::KWSolution> solutions;
  std::vector<std::string> warnings;
};

/// Raised by adiabatic_sweep with every row computed before the failure.
class SweepError : public Error {
 public:
  SweepError(const Error& cause, double epsilon, SweepReport partial);
  double epsilon() const noexcept { return epsilon_; }
  ErrorKind cause() const noexcept { return kind(); }
  const SweepReport& partial() const noexcept { return partial_; }

 private:
  double epsilon_;
  SweepReport partial_;
};

/// Omega for a model: the complement of omega_radius discs at its mass points.
torus::DiscExclusion omega_region(const ReducedModel& model, double omega_radius);

/// Diagnostics of one solved member of a family.
DiagnosticsReport diagnose(const ReducedModel& model, const kw::KWSolution& solution,
                           const DiagnosticsConfig& config, bool fit_orders);

/// Solve one member and diagnose it.
struct SingleRun {
  ReducedModel model;
  kw::KWSolution solution;
  DiagnosticsReport report;
};
SingleRun solve_and_diagnose(const VortexSpec& spec, const DiagnosticsConfig& config = {},
                             const std::optional<ScalarField>& init = std::nullopt);

using SpecFamily = std::function<VortexSpec(double epsilon, const GridSpec& grid)>;

/// Sequential continuation in epsilon with warm starts; order fits are taken
/// at the final epsilon. Errors are rethrown as SweepError.
SweepReport adiabatic_sweep(const SpecFamily& family, const kw::ContinuationSchedule& schedule,
                            const DiagnosticsConfig& config = {});

}  // namespace vortexlab::vortex
