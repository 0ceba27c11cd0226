#pragma once

#include <functional>
#include <vector>

#include "vortexlab/error.hpp"
#include "vortexlab/kw/solver.hpp"

namespace vortexlab::kw {

/// Strictly decreasing epsilons with a grid chosen per epsilon.
struct ContinuationSchedule {
  std::vector<double> epsilons;
  std::function<torus::GridSpec(double epsilon)> refine_rule;

  /// Power-of-two square-cell grids with spacing h <= eps/4 and at least
  /// `min_samples` per side.
  static ContinuationSchedule core_resolving(std::vector<double> epsilons,
                                             const torus::TorusGeometry& geometry,
                                             std::size_t min_samples = 64);
  /// Same grid for every epsilon.
  static ContinuationSchedule fixed_grid(std::vector<double> epsilons, const torus::GridSpec& grid);

  /// InvalidArgument unless epsilons are positive and strictly decreasing and
  /// every grid satisfies h <= eps/4 on `geometry`.
  void validate(const torus::TorusGeometry& geometry) const;
};

/// Raised by continuation_sweep; carries every solution computed before the
/// failing epsilon.
class ContinuationError : public Error {
 public:
  ContinuationError(const Error& cause, double epsilon, std::vector<KWSolution> completed);
  double epsilon() const noexcept { return epsilon_; }
  const std::vector<KWSolution>& completed() const noexcept { return completed_; }

 private:
  double epsilon_;
  std::vector<KWSolution> completed_;
};

using ProblemFamily = std::function<KWProblem(double epsilon, const torus::GridSpec& grid)>;

/// Solves each epsilon in order, warm-starting from the previous solution
/// resampled onto the next grid.
std::vector<KWSolution> continuation_sweep(const ProblemFamily& family,
                                           const ContinuationSchedule& schedule,
                                           const torus::TorusGeometry& geometry,
                                           const SolverConfig& config = {});

struct AprioriRow {
  double epsilon = 0.0;
  double sup_f = 0.0;
  double sup_grad_f = 0.0;
  double l2_exp_f = 0.0;        // ||e^f||_{L^2(Omega)}
  double l2_exp_minus_f = 0.0;  // ||e^-f||_{L^2(Omega)}
};

struct AprioriTable {
  std::vector<AprioriRow> rows;
  /// Column-wise maxima over the rows (epsilon holds the smallest epsilon).
  AprioriRow max;
};

/// Interior norms of each solution on Omega. A mask on a different grid is
/// applied after resampling the solution onto the mask's grid.
AprioriTable apriori_probe(const std::vector<KWSolution>& solutions, const torus::RegionMask& mask);
/// Omega is rasterised separately on each solution's own grid.
AprioriTable apriori_probe(const std::vector<KWSolution>& solutions,
                           const torus::DiscExclusion& omega);
AprioriRow apriori_row(double epsilon, const ScalarField& f, const torus::RegionMask& mask);

struct YoungBound {
  double K;
  double xi_star;
};

/// For a, b, x, y > 0: xi^-a x + xi^b y >= K x^{b/(a+b)} y^{a/(a+b)} for all
/// xi > 0, with K = (a/b)^{b/(a+b)} + (b/a)^{a/(a+b)} and equality at
/// xi* = (a x / (b y))^{1/(a+b)}. NonPositiveInput otherwise.
YoungBound young_bound(double a, double b, double x, double y);

}  // namespace vortexlab::kw
