#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vortexlab/kw/problem.hpp"

namespace vortexlab::kw {

struct SolverConfig {
  double newton_tol = 1e-10;  // on the sup residual
  int max_newton = 60;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double cg_tol = 1e-12;  // relative; the floor of the inexact-Newton forcing term
  /// Forcing term min(1e-2, sup residual) clipped below by cg_tol. Off means
  /// every linear solve runs to cg_tol.
  bool adaptive_cg = true;
  int max_backtracks = 60;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

struct KWSolution {
  ScalarField f;
  double epsilon = 0.0;
  double residual_sup = 0.0;
  double residual_l2 = 0.0;
  int iterations = 0;
  double energy = 0.0;
  Classification classification = Classification::TwoSided;
  /// Energy of the initial iterate followed by every accepted Newton iterate.
  std::vector<double> energy_history;
  std::size_t cg_iterations = 0;
};

/// Damped Newton on the convex energy. Requires eps > 0 (use kw_limit for
/// eps = 0). Errors: Unsolvable, MaxIterExceeded, OverflowGuard.
KWSolution kw_solve(const KWProblem& problem, const SolverConfig& config = {},
                    const std::optional<ScalarField>& init = std::nullopt);

struct LimitProfile {
  ScalarField f;
  /// 1 where the pointwise equation was solved, 0 on excluded samples.
  torus::RegionMask valid;
  std::size_t excluded = 0;
};

/// Pointwise root of sum A e^{alpha f} - sum B e^{-beta f} + w = 0 (the eps = 0
/// equation). Samples where a present side has total coefficient < 1e-300 are
/// excluded; NoRoot if a remaining sample has no sign change.
LimitProfile kw_limit(const KWProblem& problem);

}  // namespace vortexlab::kw
