#pragma once

// Solver for the screened operator L x = -epsilon * laplacian(x) + V x that
// appears in every Newton step of the Kazdan-Warner solver.

#include <cstddef>

#include "vortexlab/torus/field.hpp"

namespace vortexlab::torus {

struct LinearSolveOptions {
  double tol = 1e-12;
  /// 0 selects 10 * (nx + ny).
  std::size_t max_iterations = 0;
  /// Adds pin * mean(x) to L x. Makes L definite when V vanishes on large sets.
  double pin = 0.0;
  /// Recompute the true residual every this many iterations.
  std::size_t residual_replacement = 50;
};

struct LinearSolveResult {
  ScalarField x;
  std::size_t iterations = 0;
  /// ||b - L x||_2 / ||b||_2 for the returned x (true residual, not the recurrence).
  double relative_residual = 0.0;
  bool converged = false;
};

/// Preconditioned conjugate gradients; the preconditioner is the Fourier
/// multiplier (epsilon |k|^2 + mean(V))^-1. Never throws on slow convergence:
/// the best iterate is returned with converged = false. V must be >= 0.
LinearSolveResult pcg_linearized(double epsilon, const ScalarField& potential,
                                 const ScalarField& rhs, const LinearSolveOptions& options,
                                 const ScalarField* initial_guess = nullptr);

/// As above with V > 0 required (NonPositivePotential otherwise); throws
/// NoConvergence when the iteration cap is reached.
ScalarField solve_linearized(double epsilon, const ScalarField& potential, const ScalarField& rhs,
                             double tol = 1e-12);

/// L x for the same operator (pin included), for residual checks.
ScalarField apply_linearized(double epsilon, const ScalarField& potential, const ScalarField& x,
                             double pin = 0.0);

}  // namespace vortexlab::torus
