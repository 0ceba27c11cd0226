#include "vortexlab/kw/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "vortexlab/torus/quadrature.hpp"
#include "vortexlab/torus/spectral.hpp"

namespace vortexlab::kw {

namespace {

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 8;
  while (p < n) p *= 2;
  return p;
}

std::string format_eps(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

}  // namespace

ContinuationSchedule ContinuationSchedule::core_resolving(std::vector<double> epsilons,
                                                          const torus::TorusGeometry& geometry,
                                                          std::size_t min_samples) {
  const double lx = geometry.length_x();
  const double ly = geometry.length_y();
  return {std::move(epsilons), [lx, ly, min_samples](double eps) {
            auto samples = [&](double length) {
              const double needed = std::ceil(4.0 * length / eps - 1e-9);
              return next_power_of_two(std::max<std::size_t>(min_samples, static_cast<std::size_t>(needed)));
            };
            return torus::GridSpec(samples(lx), samples(ly));
          }};
}

ContinuationSchedule ContinuationSchedule::fixed_grid(std::vector<double> epsilons,
                                                      const torus::GridSpec& grid) {
  return {std::move(epsilons), [grid](double) { return grid; }};
}

void ContinuationSchedule::validate(const torus::TorusGeometry& geometry) const {
  if (epsilons.empty()) throw Error(ErrorKind::InvalidArgument, "schedule has no epsilons");
  if (!refine_rule) throw Error(ErrorKind::InvalidArgument, "schedule has no refine rule");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double eps = epsilons[i];
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw Error(ErrorKind::InvalidArgument, "schedule epsilons must be positive");
    }
    if (i > 0 && !(eps < epsilons[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "schedule epsilons must be strictly decreasing");
    }
    const double h = torus::grid_spacing(geometry, refine_rule(eps));
    if (h > eps / 4.0 * (1.0 + 1e-12)) {
      throw Error(ErrorKind::InvalidArgument,
                  "core-resolution rule h <= eps/4 violated at eps=" + format_eps(eps) +
                      " (h=" + format_eps(h) + ")");
    }
  }
}

ContinuationError::ContinuationError(const Error& cause, double epsilon,
                                     std::vector<KWSolution> completed)
    : Error(cause.kind(), "at eps=" + format_eps(epsilon) + ": " +
                              std::string(cause.what()).substr(
                                  std::string(to_string(cause.kind())).size() + 2)),
      epsilon_(epsilon),
      completed_(std::move(completed)) {}

std::vector<KWSolution> continuation_sweep(const ProblemFamily& family,
                                           const ContinuationSchedule& schedule,
                                           const torus::TorusGeometry& geometry,
                                           const SolverConfig& config) {
  schedule.validate(geometry);
  std::vector<KWSolution> out;
  for (double eps : schedule.epsilons) {
    try {
      const torus::GridSpec grid = schedule.refine_rule(eps);
      const KWProblem problem = family(eps, grid);
      std::optional<ScalarField> init;
      if (!out.empty()) init = torus::resample(out.back().f, grid);
      out.push_back(kw_solve(problem, config, init));
    } catch (const Error& e) {
      throw ContinuationError(e, eps, std::move(out));
    }
  }
  return out;
}

AprioriRow apriori_row(double epsilon, const ScalarField& f, const torus::RegionMask& mask) {
  AprioriRow row;
  row.epsilon = epsilon;
  row.sup_f = torus::sup_norm(f, mask);
  row.sup_grad_f = torus::sup_norm(torus::gradient_norm(f), mask);
  row.l2_exp_f = torus::lp_norm(f.map([](double v) { return std::exp(v); }), 2.0, mask);
  row.l2_exp_minus_f = torus::lp_norm(f.map([](double v) { return std::exp(-v); }), 2.0, mask);
  return row;
}

namespace {

AprioriTable finish(std::vector<AprioriRow> rows) {
  AprioriTable table{std::move(rows), {}};
  table.max.epsilon = std::numeric_limits<double>::infinity();
  for (const auto& r : table.rows) {
    table.max.epsilon = std::min(table.max.epsilon, r.epsilon);
    table.max.sup_f = std::max(table.max.sup_f, r.sup_f);
    table.max.sup_grad_f = std::max(table.max.sup_grad_f, r.sup_grad_f);
    table.max.l2_exp_f = std::max(table.max.l2_exp_f, r.l2_exp_f);
    table.max.l2_exp_minus_f = std::max(table.max.l2_exp_minus_f, r.l2_exp_minus_f);
  }
  if (table.rows.empty()) table.max.epsilon = 0.0;
  return table;
}

}  // namespace

AprioriTable apriori_probe(const std::vector<KWSolution>& solutions, const torus::RegionMask& mask) {
  std::vector<AprioriRow> rows;
  for (const auto& s : solutions) {
    if (s.f.grid() == mask.grid() && s.f.geometry() == mask.geometry()) {
      rows.push_back(apriori_row(s.epsilon, s.f, mask));
    } else {
      rows.push_back(apriori_row(s.epsilon, torus::resample(s.f, mask.grid()), mask));
    }
  }
  return finish(std::move(rows));
}

AprioriTable apriori_probe(const std::vector<KWSolution>& solutions,
                           const torus::DiscExclusion& omega) {
  std::vector<AprioriRow> rows;
  for (const auto& s : solutions) {
    rows.push_back(apriori_row(s.epsilon, s.f, omega.rasterize(s.f.geometry(), s.f.grid())));
  }
  return finish(std::move(rows));
}

YoungBound young_bound(double a, double b, double x, double y) {
  for (double v : {a, b, x, y}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::NonPositiveInput, "young_bound needs a, b, x, y > 0");
    }
  }
  const double s = a + b;
  const double k = std::pow(a / b, b / s) + std::pow(b / a, a / s);
  const double xi = std::pow(a * x / (b * y), 1.0 / s);
  return {k, xi};
}

}  // namespace vortexlab::kw
