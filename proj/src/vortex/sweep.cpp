#include "vortexlab/vortex/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vortexlab/torus/quadrature.hpp"
#include "vortexlab/torus/spectral.hpp"

namespace vortexlab::vortex {

namespace {

std::string format_eps(double eps) {
  std::ostringstream os;
  os.precision(6);
  os << eps;
  return os.str();
}

std::vector<Point> mass_point_locations(const ReducedModel& model) {
  std::vector<Point> out;
  for (const auto& m : model.mass_points) out.push_back(m.point);
  return out;
}

// The eps = 0 member built from the model's own densities.
kw::KWProblem limit_problem(const ReducedModel& model) {
  const double w0 = model.kind == VortexKind::Classical ? -2.0 : model.tau;
  return kw::KWProblem(0.0, model.problem.plus_terms(), model.problem.minus_terms(),
                       ScalarField::constant(model.geometry, model.grid, w0));
}

bool energy_nonincreasing(const std::vector<double>& history) {
  for (std::size_t i = 1; i < history.size(); ++i) {
    const double slack = 1e-14 * std::max(1.0, std::abs(history[i - 1]));
    if (history[i] > history[i - 1] + slack) return false;
  }
  return true;
}

std::optional<double> order_fit_at(const ScalarField& phi_sq, Point center,
                                   std::span<const Point> others, const DiagnosticsConfig& config) {
  const double h = torus::grid_spacing(phi_sq.geometry(), phi_sq.grid());
  double nearest = std::numeric_limits<double>::infinity();
  for (const Point& q : others) {
    const double r = phi_sq.geometry().distance(center, q);
    if (r > 1e-12) nearest = std::min(nearest, r);
  }
  const double r_min = std::max(config.order_r_min, 2.0 * h);
  const double r_max = std::min({config.order_r_max, 0.5 * nearest,
                                 0.49 * phi_sq.geometry().min_length()});
  if (!(r_max > r_min)) return std::nullopt;
  try {
    return vanishing_order_fit(phi_sq, center, r_min, r_max, config.order_fit);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DegenerateFit) return std::nullopt;
    throw;
  }
}

}  // namespace

SweepError::SweepError(const Error& cause, double epsilon, SweepReport partial)
    : Error(cause.kind(), "at eps=" + format_eps(epsilon) + ": " +
                              std::string(cause.what()).substr(
                                  std::string(to_string(cause.kind())).size() + 2)),
      epsilon_(epsilon),
      partial_(std::move(partial)) {}

torus::DiscExclusion omega_region(const ReducedModel& model, double omega_radius) {
  return torus::DiscExclusion{mass_point_locations(model), omega_radius};
}

DiagnosticsReport diagnose(const ReducedModel& model, const kw::KWSolution& solution,
                           const DiagnosticsConfig& config, bool fit_orders) {
  const ScalarField& f = solution.f;
  const Reconstruction fields = reconstruct(model, f);
  const torus::RegionMask omega =
      omega_region(model, config.omega_radius).rasterize(model.geometry, model.grid);
  const std::vector<Point> locations = mass_point_locations(model);

  DiagnosticsReport row{};
  row.epsilon = model.epsilon;
  row.grid = model.grid;
  row.newton_iterations = solution.iterations;
  row.residual_sup = solution.residual_sup;
  row.energy_monotone = energy_nonincreasing(solution.energy_history);
  row.total_mass = torus::integrate(fields.curvature) / (2.0 * std::numbers::pi);

  double point_sum = 0.0;
  for (const MassPoint& mp : model.mass_points) {
    const BumpRadii radii = config.bump_radii.value_or(
        default_bump_radii(model.epsilon, model.geometry, model.grid, mp.point, locations));
    PointDiagnostics pd{mp.point, mp.expected_mass, radii,
                        curvature_mass(fields.curvature, mp.point, radii.r_inner,
                                       radii.r_outer, locations),
                        std::nullopt};
    if (fit_orders) pd.order_fit = order_fit_at(fields.phi_sq_total, mp.point, locations, config);
    point_sum += pd.curvature_mass;
    row.points.push_back(pd);
  }
  row.complement_mass = row.total_mass - point_sum;

  if (model.kind == VortexKind::Classical) {
    row.sup_deviation = torus::sup_norm(fields.phi_sq_total * -1.0 + 1.0, omega);
  } else {
    const kw::LimitProfile limit = kw::kw_limit(limit_problem(model));
    row.sup_deviation = torus::sup_norm(f - limit.f, omega.intersect(limit.valid));
  }
  row.identities = integral_identities(model, fields);
  row.apriori = kw::apriori_row(model.epsilon, f, omega);
  return row;
}

SingleRun solve_and_diagnose(const VortexSpec& spec, const DiagnosticsConfig& config,
                             const std::optional<ScalarField>& init) {
  ReducedModel model = reduce(spec);
  const auto start = std::chrono::steady_clock::now();
  kw::KWSolution solution = kw::kw_solve(model.problem, config.solver, init);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  DiagnosticsReport report = diagnose(model, solution, config, true);
  report.solve_seconds = seconds;
  return {std::move(model), std::move(solution), std::move(report)};
}

SweepReport adiabatic_sweep(const SpecFamily& family, const kw::ContinuationSchedule& schedule,
                            const DiagnosticsConfig& config) {
  if (schedule.epsilons.empty()) {
    throw Error(ErrorKind::InvalidArgument, "empty epsilon schedule");
  }
  const double eps0 = schedule.epsilons.front();
  const TorusGeometry geometry = spec_geometry(family(eps0, schedule.refine_rule(eps0)));
  schedule.validate(geometry);
  config.solver.validate();

  SweepReport report{};
  std::optional<ScalarField> warm;
  for (std::size_t i = 0; i < schedule.epsilons.size(); ++i) {
    const double eps = schedule.epsilons[i];
    const bool last = i + 1 == schedule.epsilons.size();
    try {
      const GridSpec grid = schedule.refine_rule(eps);
      const VortexSpec spec = family(eps, grid);
      report.kind = static_cast<VortexKind>(spec.index());
      ReducedModel model = reduce(spec);
      for (const auto& w : model.warnings) {
        if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end()) {
          report.warnings.push_back(w);
        }
      }
      std::optional<ScalarField> init;
      if (warm) init = torus::resample(*warm, grid);
      const auto start = std::chrono::steady_clock::now();
      kw::KWSolution solution = kw::kw_solve(model.problem, config.solver, init);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      DiagnosticsReport row = diagnose(model, solution, config, last);
      row.solve_seconds = seconds;
      warm = solution.f;
      report.rows.push_back(std::move(row));
      report.solutions.push_back(std::move(solution));
    } catch (const Error& e) {
      throw SweepError(e, eps, std::move(report));
    }
  }
  return report;
}

}  // namespace vortexlab::vortex
