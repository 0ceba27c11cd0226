#pragma once

#include <span>
#include <vector>

#include "vortexlab/kernels/pointwise.hpp"
#include "vortexlab/kw/problem.hpp"

namespace vortexlab::kw::detail {

/// Flattens a problem's exponential terms for the pointwise kernels.
class TermEvaluation {
 public:
  explicit TermEvaluation(const KWProblem& problem) : scratch_(problem.grid().size()) {
    for (const auto& t : problem.plus_terms()) terms_.push_back({t.coefficient.values(), t.rate});
    for (const auto& t : problem.minus_terms()) terms_.push_back({t.coefficient.values(), -t.rate});
  }

  /// Returns true when no exponent exceeded the guard.
  bool evaluate(const ScalarField& f, std::span<double> value, std::span<double> potential,
                std::span<double> energy) {
    overflow_ = kernels::evaluate_exp_terms(f.values(), terms_, kExponentGuard,
                                            {value, potential, energy});
    return overflow_ == kernels::kNoOverflow;
  }

  void throw_if_overflow(const ScalarField& f) const;

  std::vector<double>& scratch() noexcept { return scratch_; }

 private:
  std::vector<kernels::ExpTerm> terms_;
  std::vector<double> scratch_;
  std::size_t overflow_ = kernels::kNoOverflow;
};

}  // namespace vortexlab::kw::detail
