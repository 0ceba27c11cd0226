#include "vortexlab/kw/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "terms.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/kernels/pointwise.hpp"
#include "vortexlab/torus/linear_solve.hpp"
#include "vortexlab/torus/quadrature.hpp"
#include "vortexlab/torus/spectral.hpp"

namespace vortexlab::kw {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

constexpr double kPotentialFloor = 1e-14;
constexpr double kPinThreshold = 1e-8;
constexpr double kArmijoSlack = 1e-14;

// Residual, Newton potential and energy of one iterate.
struct Iterate {
  ScalarField f;
  std::vector<double> residual;
  std::vector<double> potential;
  double energy = 0.0;
};

class Evaluator {
 public:
  explicit Evaluator(const KWProblem& problem)
      : problem_(problem), terms_(problem), energy_density_(problem.grid().size()) {}

  // False if an exponent crossed the guard; `it` is then unusable.
  bool evaluate(Iterate& it) {
    const std::size_t n = it.f.size();
    it.residual.resize(n);
    it.potential.resize(n);
    if (!terms_.evaluate(it.f, it.residual, it.potential, energy_density_)) return false;
    const ScalarField lap = torus::laplacian(it.f);
    kernels::axpy(-problem_.epsilon(), lap.values(), it.residual);
    kernels::axpy(1.0, problem_.w().values(), it.residual);
    std::vector<double>& wf = terms_.scratch();
    kernels::multiply(problem_.w().values(), it.f.values(), wf);
    kernels::axpy(1.0, wf, energy_density_);
    const double volume = it.f.geometry().volume();
    it.energy = 0.5 * problem_.epsilon() * torus::dirichlet_energy(it.f) +
                kernels::blocked_sum(energy_density_) / static_cast<double>(n) * volume;
    return true;
  }

  void throw_overflow(const ScalarField& f) {
    terms_.throw_if_overflow(f);
    throw Error(ErrorKind::OverflowGuard, "exponent guard tripped");
  }

 private:
  const KWProblem& problem_;
  detail::TermEvaluation terms_;
  std::vector<double> energy_density_;
};

double quadrature_dot(std::span<const double> a, std::span<const double> b, double volume) {
  return kernels::blocked_dot(a, b) / static_cast<double>(a.size()) * volume;
}

}  // namespace

void SolverConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); };
  if (!(newton_tol > 0.0)) fail("newton_tol must be positive");
  if (max_newton < 1) fail("max_newton must be at least 1");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) fail("armijo_c must lie in (0, 1)");
  if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0)) fail("armijo_shrink must lie in (0, 1)");
  if (!(cg_tol > 0.0 && cg_tol < 1.0)) fail("cg_tol must lie in (0, 1)");
  if (max_backtracks < 1) fail("max_backtracks must be at least 1");
}

KWSolution kw_solve(const KWProblem& problem, const SolverConfig& config,
                    const std::optional<ScalarField>& init) {
  config.validate();
  if (!(problem.epsilon() > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "kw_solve needs eps > 0; use kw_limit for eps = 0");
  }
  problem.require_balance();

  const torus::TorusGeometry& geometry = problem.geometry();
  const double volume = geometry.volume();
  Evaluator evaluator(problem);

  Iterate current{init ? *init : ScalarField(geometry, problem.grid()), {}, {}, 0.0};
  problem.w().require_compatible(current.f, "kw_solve initial guess");
  if (!current.f.all_finite()) throw Error(ErrorKind::InvalidArgument, "initial guess is not finite");
  if (!evaluator.evaluate(current)) evaluator.throw_overflow(current.f);

  KWSolution out{current.f, 0.0, 0.0, 0.0, 0, 0.0, Classification::TwoSided, {}, 0};
  out.epsilon = problem.epsilon();
  out.classification = problem.classification();
  out.energy_history.push_back(current.energy);

  ScalarField potential(geometry, problem.grid());
  ScalarField rhs(geometry, problem.grid());
  Iterate trial{ScalarField(geometry, problem.grid()), {}, {}, 0.0};

  int iteration = 0;
  for (;;) {
    const double sup = kernels::max_abs(current.residual);
    if (sup <= config.newton_tol) break;
    if (iteration >= config.max_newton) {
      throw Error(ErrorKind::MaxIterExceeded,
                  "Newton stopped after " + std::to_string(iteration) +
                      " iterations with sup residual " + sci(sup));
    }

    for (std::size_t k = 0; k < potential.size(); ++k) {
      potential[k] = std::max(current.potential[k], kPotentialFloor);
      rhs[k] = -current.residual[k];
    }
    torus::LinearSolveOptions options;
    options.tol = config.adaptive_cg ? std::clamp(sup, config.cg_tol, 1e-2) : config.cg_tol;
    if (potential.mean() < kPinThreshold) options.pin = 1.0;
    torus::LinearSolveResult step = torus::pcg_linearized(problem.epsilon(), potential, rhs, options);
    out.cg_iterations += step.iterations;

    double slope = quadrature_dot(current.residual, step.x.values(), volume);
    if (!(slope < 0.0)) {
      // The linear solve failed to produce a descent direction; fall back to
      // the steepest-descent direction of the energy.
      step.x = rhs;
      slope = quadrature_dot(current.residual, step.x.values(), volume);
    }

    double t = 1.0;
    bool accepted = false;
    const double slack = kArmijoSlack * std::max(1.0, std::abs(current.energy));
    for (int b = 0; b < config.max_backtracks; ++b, t *= config.armijo_shrink) {
      trial.f = current.f;
      kernels::axpy(t, step.x.values(), trial.f.values());
      if (!evaluator.evaluate(trial)) continue;
      if (trial.energy <= current.energy + config.armijo_c * t * slope + slack) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw Error(ErrorKind::MaxIterExceeded,
                  "line search failed at Newton iteration " + std::to_string(iteration) +
                      " (sup residual " + sci(sup) + ")");
    }
    std::swap(current, trial);
    out.energy_history.push_back(current.energy);
    ++iteration;
  }

  out.iterations = iteration;
  out.residual_sup = kernels::max_abs(current.residual);
  out.residual_l2 = std::sqrt(quadrature_dot(current.residual, current.residual, volume));
  out.energy = current.energy;
  out.f = std::move(current.f);
  return out;
}

namespace {

constexpr double kExcludeThreshold = 1e-300;

// Pointwise g(y) = sum a e^{alpha y} - sum b e^{-beta y} + w and g'(y).
struct ScalarBalance {
  std::vector<double> a, alpha, b, beta;
  double w = 0.0;

  std::pair<double, double> operator()(double y) const {
    double g = w;
    double dg = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] == 0.0) continue;
      const double e = a[j] * std::exp(alpha[j] * y);
      g += e;
      dg += alpha[j] * e;
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0.0) continue;
      const double e = b[j] * std::exp(-beta[j] * y);
      g -= e;
      dg += beta[j] * e;
    }
    return {g, dg};
  }
};

// Root of the increasing scalar balance; NaN if there is no sign change.
double solve_scalar(const ScalarBalance& g) {
  constexpr double kLimit = 1e4;
  double lo = 0.0;
  double hi = 0.0;
  const double g0 = g(0.0).first;
  if (g0 == 0.0) return 0.0;
  if (g0 > 0.0) {
    for (double step = 1.0;; step *= 2.0) {
      lo = -step;
      if (g(lo).first < 0.0) break;
      hi = lo;
      if (step > kLimit) return std::numeric_limits<double>::quiet_NaN();
    }
  } else {
    for (double step = 1.0;; step *= 2.0) {
      hi = step;
      if (g(hi).first > 0.0) break;
      lo = hi;
      if (step > kLimit) return std::numeric_limits<double>::quiet_NaN();
    }
  }
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 300; ++it) {
    const auto [v, dv] = g(y);
    if (v == 0.0) return y;
    if (v > 0.0) hi = y; else lo = y;
    double next = y - v / dv;
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= 4e-16 * std::max(1.0, std::abs(y)) || hi - lo <= 4e-16 * std::max(1.0, std::abs(y))) {
      return next;
    }
    y = next;
  }
  return y;
}

}  // namespace

LimitProfile kw_limit(const KWProblem& problem) {
  const Classification cls = problem.classification();
  if (cls == Classification::Vacuous) {
    throw Error(ErrorKind::Unsolvable, "eps = 0 problem without exponential terms");
  }
  const auto& plus = problem.plus_terms();
  const auto& minus = problem.minus_terms();
  const bool need_plus = cls != Classification::OneSidedMinus;
  const bool need_minus = cls != Classification::OneSidedPlus;
  const ScalarField& w = problem.w();
  const std::size_t n = w.size();

  ScalarField f(problem.geometry(), problem.grid());
  std::vector<double> valid(n, 1.0);
  std::atomic<std::size_t> first_failure{n};

  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count())
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    const auto k = static_cast<std::size_t>(s);
    ScalarBalance g;
    g.w = w[k];
    double a_sum = 0.0;
    double b_sum = 0.0;
    for (const auto& t : plus) {
      g.a.push_back(t.coefficient[k]);
      g.alpha.push_back(t.rate);
      a_sum += t.coefficient[k];
    }
    for (const auto& t : minus) {
      g.b.push_back(t.coefficient[k]);
      g.beta.push_back(t.rate);
      b_sum += t.coefficient[k];
    }
    if ((need_plus && a_sum < kExcludeThreshold) || (need_minus && b_sum < kExcludeThreshold)) {
      valid[k] = 0.0;
      continue;
    }
    double y;
    if (g.a.size() == 1 && g.b.size() == 1 && g.w == 0.0) {
      y = std::log(g.b[0] / g.a[0]) / (g.alpha[0] + g.beta[0]);
    } else {
      y = solve_scalar(g);
    }
    if (std::isnan(y)) {
      std::size_t expected = first_failure.load();
      while (k < expected && !first_failure.compare_exchange_weak(expected, k)) {
      }
      continue;
    }
    f[k] = y;
  }
  if (first_failure.load() < n) {
    const std::size_t k = first_failure.load();
    const torus::Point p = f.point(k);
    throw Error(ErrorKind::NoRoot, "eps = 0 balance has no root at sample " + std::to_string(k) +
                                       " (x=" + std::to_string(p.x) + ", y=" + std::to_string(p.y) +
                                       ", w=" + std::to_string(w[k]) + ")");
  }
  std::size_t excluded = 0;
  for (double v : valid) excluded += v == 0.0 ? 1 : 0;
  return {std::move(f), torus::RegionMask(problem.geometry(), problem.grid(), std::move(valid)),
          excluded};
}

}  // namespace vortexlab::kw
