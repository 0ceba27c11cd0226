#include "vortexlab/kw/problem.hpp"

#include <cmath>
#include <string>

#include "terms.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/kernels/pointwise.hpp"
#include "vortexlab/torus/quadrature.hpp"
#include "vortexlab/torus/spectral.hpp"

namespace vortexlab::kw {

namespace {

constexpr double kClampTolerance = 1e-14;

void sanitize(std::vector<KWTerm>& terms, const ScalarField& w, const char* side) {
  for (std::size_t j = 0; j < terms.size(); ++j) {
    KWTerm& t = terms[j];
    w.require_compatible(t.coefficient, "KW coefficient");
    if (!(t.rate > 0.0) || !std::isfinite(t.rate)) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string(side) + " term " + std::to_string(j) + " needs a positive rate");
    }
    for (double& c : t.coefficient.values()) {
      if (!std::isfinite(c) || c < -kClampTolerance) {
        throw Error(ErrorKind::InvalidArgument, std::string(side) + " coefficient " +
                                                    std::to_string(j) +
                                                    " must be finite and nonnegative");
      }
      if (c < 0.0) c = 0.0;
    }
  }
}

bool positive_somewhere(const std::vector<KWTerm>& terms) {
  for (const auto& t : terms) {
    if (t.coefficient.max() > 0.0) return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::TwoSided: return "TWO_SIDED";
    case Classification::OneSidedPlus: return "ONE_SIDED_PLUS";
    case Classification::OneSidedMinus: return "ONE_SIDED_MINUS";
    case Classification::Vacuous: return "VACUOUS";
  }
  return "?";
}

KWProblem::KWProblem(double epsilon, std::vector<KWTerm> plus_terms,
                     std::vector<KWTerm> minus_terms, ScalarField w)
    : epsilon_(epsilon), plus_(std::move(plus_terms)), minus_(std::move(minus_terms)), w_(std::move(w)) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must be finite and nonnegative");
  }
  if (!w_.all_finite()) throw Error(ErrorKind::InvalidArgument, "w must be finite");
  sanitize(plus_, w_, "plus");
  sanitize(minus_, w_, "minus");
  const bool a = positive_somewhere(plus_);
  const bool b = positive_somewhere(minus_);
  classification_ = a && b  ? Classification::TwoSided
                    : a     ? Classification::OneSidedPlus
                    : b     ? Classification::OneSidedMinus
                            : Classification::Vacuous;
}

bool KWProblem::balance_holds() const {
  switch (classification_) {
    case Classification::TwoSided: return true;
    case Classification::OneSidedPlus: return torus::integrate(w_) < 0.0;
    case Classification::OneSidedMinus: return torus::integrate(w_) > 0.0;
    case Classification::Vacuous: return false;
  }
  return false;
}

void KWProblem::require_balance() const {
  if (balance_holds()) return;
  const double iw = torus::integrate(w_);
  switch (classification_) {
    case Classification::OneSidedPlus:
      throw Error(ErrorKind::Unsolvable, "one-sided (plus) problem needs integral of w < 0, got " +
                                             std::to_string(iw));
    case Classification::OneSidedMinus:
      throw Error(ErrorKind::Unsolvable, "one-sided (minus) problem needs integral of w > 0, got " +
                                             std::to_string(iw));
    default:
      throw Error(ErrorKind::Unsolvable, "problem has no nonzero exponential term");
  }
}

KWProblem KWProblem::with_epsilon(double epsilon) const {
  KWProblem copy = *this;
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must be finite and nonnegative");
  }
  copy.epsilon_ = epsilon;
  return copy;
}

ScalarField kw_residual(const KWProblem& problem, const ScalarField& f) {
  problem.w().require_compatible(f, "kw_residual");
  ScalarField out(f.geometry(), f.grid());
  detail::TermEvaluation eval(problem);
  eval.evaluate(f, out.values(), {}, {});
  eval.throw_if_overflow(f);
  const ScalarField lap = torus::laplacian(f);
  kernels::axpy(-problem.epsilon(), lap.values(), out.values());
  kernels::axpy(1.0, problem.w().values(), out.values());
  return out;
}

double kw_energy(const KWProblem& problem, const ScalarField& f) {
  problem.w().require_compatible(f, "kw_energy");
  std::vector<double> density(f.size());
  detail::TermEvaluation eval(problem);
  eval.evaluate(f, {}, {}, density);
  eval.throw_if_overflow(f);
  kernels::multiply(problem.w().values(), f.values(), std::span<double>(eval.scratch()));
  kernels::axpy(1.0, eval.scratch(), density);
  const double volume = f.geometry().volume();
  const double pointwise = kernels::blocked_sum(density) / static_cast<double>(f.size()) * volume;
  return 0.5 * problem.epsilon() * torus::dirichlet_energy(f) + pointwise;
}

}  // namespace vortexlab::kw

namespace vortexlab::kw::detail {

void TermEvaluation::throw_if_overflow(const ScalarField& f) const {
  if (overflow_ == kernels::kNoOverflow) return;
  const torus::Point p = f.point(overflow_);
  throw Error(ErrorKind::OverflowGuard,
              "exponent above " + std::to_string(kExponentGuard) + " at sample " +
                  std::to_string(overflow_) + " (x=" + std::to_string(p.x) +
                  ", y=" + std::to_string(p.y) + ", f=" + std::to_string(f[overflow_]) + ")");
}

}  // namespace vortexlab::kw::detail
