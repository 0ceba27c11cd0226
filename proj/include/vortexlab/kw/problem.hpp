#pragma once

// The generalized Kazdan-Warner equation in the analyst's sign convention:
//
//   -eps * laplacian f + sum_j A_j e^{alpha_j f} - sum_j B_j e^{-beta_j f} + w = 0,
//
// (with the nonnegative Hodge Laplacian this reads eps*Delta f + ... + w = 0).
// It is the Euler-Lagrange equation of the strictly convex energy
//
//   E(f) = int eps/2 |grad f|^2 + sum A_j/alpha_j e^{alpha_j f} + sum B_j/beta_j e^{-beta_j f} + w f.

#include <string_view>
#include <vector>

#include "vortexlab/torus/field.hpp"

namespace vortexlab::kw {

using torus::ScalarField;

/// Exponent above which evaluation refuses to exponentiate.
inline constexpr double kExponentGuard = 700.0;

enum class Classification { TwoSided, OneSidedPlus, OneSidedMinus, Vacuous };
std::string_view to_string(Classification c) noexcept;

struct KWTerm {
  ScalarField coefficient;  // A_j or B_j, >= 0
  double rate;              // alpha_j or beta_j, > 0
};

class KWProblem {
 public:
  /// Coefficients down to -1e-14 are clamped to zero; anything more negative,
  /// a non-positive rate, mismatched grids or eps < 0 is InvalidArgument.
  KWProblem(double epsilon, std::vector<KWTerm> plus_terms, std::vector<KWTerm> minus_terms,
            ScalarField w);

  double epsilon() const noexcept { return epsilon_; }
  const std::vector<KWTerm>& plus_terms() const noexcept { return plus_; }
  const std::vector<KWTerm>& minus_terms() const noexcept { return minus_; }
  const ScalarField& w() const noexcept { return w_; }
  const torus::TorusGeometry& geometry() const noexcept { return w_.geometry(); }
  const torus::GridSpec& grid() const noexcept { return w_.grid(); }

  Classification classification() const noexcept { return classification_; }
  /// Constant-direction balance: one-sided problems need the integral of w
  /// to have the opposite sign of the surviving exponentials.
  bool balance_holds() const;
  /// Throws Unsolvable with the reason when balance_holds() is false.
  void require_balance() const;

  KWProblem with_epsilon(double epsilon) const;

 private:
  double epsilon_;
  std::vector<KWTerm> plus_;
  std::vector<KWTerm> minus_;
  ScalarField w_;
  Classification classification_;
};

/// -eps * laplacian f + sum A e^{alpha f} - sum B e^{-beta f} + w.
/// Throws OverflowGuard if any exponent exceeds 700.
ScalarField kw_residual(const KWProblem& problem, const ScalarField& f);

double kw_energy(const KWProblem& problem, const ScalarField& f);

}  // namespace vortexlab::kw
