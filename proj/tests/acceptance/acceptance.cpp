// Acceptance suite: one verdict line per criterion.
//
//   acceptance                 run all criteria
//   acceptance --criterion 4   run one
//
// Exit status is 0 when every selected criterion passes. Lines marked
// "(supplementary)" are informational and never affect the verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "manufactured.hpp"
#include "oracles.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/kw/continuation.hpp"
#include "vortexlab/torus/cutoff.hpp"
#include "vortexlab/torus/quadrature.hpp"
#include "vortexlab/vortex/sweep.hpp"

using namespace vortexlab;
using namespace vortexlab::vortex;
using green::DivisorPoint;
using testing::kPi;
using testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Tolerances, pinned.
constexpr double kC1SupError = 1e-8;
constexpr double kC1Residual = 1e-10;
constexpr int kC1MaxNewton = 25;
constexpr double kC1Seconds = 5.0;
constexpr double kC2Bradlow = 1e-6;  // times Vol
constexpr double kC2Seconds = 30.0;
constexpr double kC3MassError = 0.02;
constexpr double kC3Deviation = 0.05;
constexpr double kC34Seconds = 600.0;
constexpr double kC4Deviation = 0.05;
constexpr double kC4MassError = 0.02;
constexpr double kC5SupFactor = 1.5;
constexpr double kC5L2Factor = 2.0;
constexpr double kC6OrderRel = 0.05;
constexpr double kC7Identity = 1e-6;  // times Vol
constexpr double kC8Distance = 1e-8;
constexpr double kC9Relative = 1e-12;
constexpr double kC10Slack = 1.05;

const std::vector<double> kSchedule = {0.4, 0.2, 0.1, 0.05, 0.025};

struct Report {
  bool pass = true;
  std::string summary;
  std::vector<std::string> supplementary;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!summary.empty()) summary += "; ";
      summary += "failed: " + what;
    }
  }
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::string join(const std::vector<double>& v, const char* format = "%.4g") {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(format, v[i]);
  return out + "]";
}

// Energy monotonicity over every Newton solve a criterion performs.
struct EnergyLog {
  int solves = 0;
  int violations = 0;
  void add(const kw::KWSolution& s) {
    ++solves;
    for (std::size_t i = 1; i < s.energy_history.size(); ++i) {
      const double slack = 1e-14 * std::max(1.0, std::abs(s.energy_history[i - 1]));
      if (s.energy_history[i] > s.energy_history[i - 1] + slack) {
        ++violations;
        return;
      }
    }
  }
  void add(const SweepReport& r) {
    for (const auto& s : r.solutions) add(s);
  }
  std::string text() const { return fmt("energy monotone in %d/%d solves", solves - violations, solves); }
};

const TorusGeometry kUnit = TorusGeometry::unit();

Divisor divisor(std::vector<DivisorPoint> points, const TorusGeometry& g = kUnit) {
  return Divisor(g, std::move(points));
}

SpecFamily mixed_family(Divisor plus, Divisor minus) {
  return [plus, minus](double eps, const GridSpec& grid) -> VortexSpec {
    return MixedVortexSpec{plus, minus, 0.0, 1.0, 1.0, eps, kUnit, grid, std::nullopt};
  };
}

// p, q in D+ and r in D-; pairwise separations >= 0.5.
const Point kP{0.25, 0.25};
const Point kQ{0.75, 0.25};
const Point kR{0.5, 0.75};

SpecFamily criterion4_family() {
  return mixed_family(divisor({{kP, 1}, {kQ, 1}}), divisor({{kR, 1}}));
}

kw::ContinuationSchedule schedule(const std::vector<double>& eps) {
  return kw::ContinuationSchedule::core_resolving(eps, kUnit, 64);
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Report criterion1() {
  Report r;
  EnergyLog energy;
  const GridSpec grid = GridSpec::square(128);
  const ScalarField fstar = testing::manufactured_profile(grid);
  std::vector<double> errors, residuals, seconds;
  int worst_iterations = 0;
  for (double eps : {1.0, 0.1, 0.01}) {
    const kw::KWProblem problem = testing::manufactured_problem(eps, grid);
    const auto start = Clock::now();
    const kw::KWSolution s = kw::kw_solve(problem);
    seconds.push_back(since(start));
    energy.add(s);
    errors.push_back(testing::max_abs_difference(s.f, fstar));
    residuals.push_back(s.residual_sup);
    worst_iterations = std::max(worst_iterations, s.iterations);
  }
  const double e = *std::max_element(errors.begin(), errors.end());
  const double res = *std::max_element(residuals.begin(), residuals.end());
  const double t = *std::max_element(seconds.begin(), seconds.end());
  r.require(e <= kC1SupError, "sup error");
  r.require(res <= kC1Residual, "residual");
  r.require(worst_iterations <= kC1MaxNewton, "Newton iterations");
  r.require(t < kC1Seconds, "time per solve");
  r.require(energy.violations == 0, "energy monotonicity");
  r.summary = fmt("manufactured recovery at eps {1, 0.1, 0.01}, 128^2: sup error %.2e (tol %.0e), "
                  "residual %.2e (tol %.0e), max %d Newton steps (limit %d), slowest solve %.2fs "
                  "(limit %.0fs), %s",
                  e, kC1SupError, res, kC1Residual, worst_iterations, kC1MaxNewton, t, kC1Seconds,
                  energy.text().c_str()) +
              (r.summary.empty() ? "" : "; " + r.summary);
  return r;
}

Report criterion2() {
  Report r;
  EnergyLog energy;
  const GridSpec grid = GridSpec::square(256);
  const std::vector<Divisor> divisors = {
      divisor({{{0.5, 0.5}, 1}}),
      divisor({{{0.25, 0.25}, 1}, {{0.75, 0.75}, 1}}),
      divisor({{{0.25, 0.25}, 1}, {{0.75, 0.75}, 2}}),
  };
  const auto start = Clock::now();
  std::vector<double> gaps;
  for (const Divisor& d : divisors) {
    const ReducedModel model = reduce(ClassicalVortexSpec{d, 0.2, kUnit, grid});
    const kw::KWSolution s = kw::kw_solve(model.problem);
    energy.add(s);
    const Reconstruction fields = reconstruct(model, s.f);
    const double deficit = kUnit.volume() - torus::integrate(fields.phi_sq_total);
    gaps.push_back(std::abs(deficit - 2.0 * kPi * d.degree() * 0.04));
  }
  const double total = since(start);
  const double worst = *std::max_element(gaps.begin(), gaps.end());
  r.require(worst <= kC2Bradlow * kUnit.volume(), "Bradlow identity");
  r.require(total < kC2Seconds, "runtime");
  r.require(energy.violations == 0, "energy monotonicity");
  const std::string failures = r.summary;
  r.summary = fmt("Bradlow identity d = 1, 2, 3 at eps 0.2, 256^2: |int(1-|phi|^2) - 2 pi d eps^2| = %s "
                  "(tol %.0e Vol), %.1fs total (limit %.0fs), %s",
                  join(gaps, "%.2e").c_str(), kC2Bradlow, total, kC2Seconds, energy.text().c_str()) +
              (failures.empty() ? "" : "; " + failures);
  return r;
}

// Shared by criterion 3 and its admissible-tail line.
Report judge_classical_sweep(const SweepReport& sweep, double seconds, const EnergyLog& energy) {
  Report r;
  const DiagnosticsReport& last = sweep.rows.back();
  std::vector<double> deviations, epsilons;
  for (const auto& row : sweep.rows) {
    deviations.push_back(row.sup_deviation);
    epsilons.push_back(row.epsilon);
  }
  std::string masses;
  double worst = 0.0;
  for (const auto& p : last.points) {
    worst = std::max(worst, std::abs(p.curvature_mass - *p.expected_mass));
    masses += fmt("%s%.4f (target %g)", masses.empty() ? "" : ", ", p.curvature_mass, *p.expected_mass);
  }
  r.require(worst <= kC3MassError, "curvature masses");
  r.require(strictly_decreasing(deviations), "deviation not strictly decreasing");
  r.require(deviations.back() <= kC3Deviation, "final deviation");
  r.require(seconds < kC34Seconds, "runtime");
  r.require(energy.violations == 0, "energy monotonicity");
  const std::string failures = r.summary;
  r.summary = fmt("eps %s: final masses %s, max error %.4f (tol %.2f); sup_Omega |1-|phi|^2| = %s "
                  "(final tol %.2f); %.0fs; %s",
                  join(epsilons, "%g").c_str(),
                  masses.c_str(), worst, kC3MassError, join(deviations, "%.3e").c_str(),
                  kC3Deviation, seconds, energy.text().c_str()) +
              (failures.empty() ? "" : "; " + failures);
  return r;
}

Report criterion3() {
  const Divisor d = divisor({{{0.25, 0.25}, 1}, {{0.75, 0.75}, 2}});
  const SpecFamily family = [d](double eps, const GridSpec& grid) -> VortexSpec {
    return ClassicalVortexSpec{d, eps, kUnit, grid};
  };
  Report r;
  const auto start = Clock::now();
  try {
    EnergyLog energy;
    const SweepReport sweep = adiabatic_sweep(family, schedule(kSchedule));
    energy.add(sweep);
    r = judge_classical_sweep(sweep, since(start), energy);
  } catch (const SweepError& e) {
    r.pass = false;
    r.summary = fmt("curvature concentration for D = x0 + 2 x1 over eps %s: no solution at eps=%g "
                    "(%s); 2 pi d eps^2 = %.3f exceeds Vol = 1, so the schedule is infeasible",
                    join(kSchedule, "%g").c_str(), e.epsilon(), e.what(),
                    2 * kPi * 3 * e.epsilon() * e.epsilon());
  }

  const std::vector<double> tail(kSchedule.begin() + 1, kSchedule.end());
  const auto tail_start = Clock::now();
  EnergyLog energy;
  const SweepReport sweep = adiabatic_sweep(family, schedule(tail));
  energy.add(sweep);
  const Report t = judge_classical_sweep(sweep, since(tail_start), energy);
  r.supplementary.push_back(std::string(t.pass ? "PASS" : "FAIL") +
                            " admissible tail (eps <= 0.2): " + t.summary);
  return r;
}

Report criterion4() {
  Report r;
  EnergyLog energy;
  const auto start = Clock::now();
  const SweepReport sweep = adiabatic_sweep(criterion4_family(), schedule(kSchedule));
  energy.add(sweep);
  std::vector<double> deviations;
  for (const auto& row : sweep.rows) deviations.push_back(row.sup_deviation);
  const auto& last = sweep.rows.back();
  std::vector<double> masses;
  double worst = 0.0;
  for (const auto& p : last.points) {
    masses.push_back(p.curvature_mass);
    worst = std::max(worst, std::abs(p.curvature_mass - *p.expected_mass));
  }
  std::vector<double> p_track;
  for (const auto& row : sweep.rows) p_track.push_back(row.points[0].curvature_mass);

  // Co-located zeros: the core shrinks like eps^(2/5), slower than eps, so the
  // bump is held at fixed radii and the schedule runs one step further.
  const std::vector<double> colocated_eps = {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125};
  DiagnosticsConfig fixed;
  fixed.bump_radii = BumpRadii{0.15, 0.25};
  const SweepReport colocated = adiabatic_sweep(
      mixed_family(divisor({{kP, 2}}), divisor({{kP, 1}})), schedule(colocated_eps), fixed);
  energy.add(colocated);
  std::vector<double> co_track;
  for (const auto& row : colocated.rows) co_track.push_back(row.points[0].curvature_mass);
  const double seconds = since(start);

  r.require(strictly_decreasing(deviations), "deviation not decreasing");
  r.require(deviations.back() <= kC4Deviation, "final deviation");
  r.require(worst <= kC4MassError, "masses at p, q, r");
  r.require(std::abs(co_track.back() - 0.5) <= kC4MassError, "co-located mass");
  r.require(seconds < kC34Seconds, "runtime");
  r.require(energy.violations == 0, "energy monotonicity");
  const std::string failures = r.summary;
  r.summary =
      fmt("mixed limit D+ = p + q, D- = r, tau 0: sup_Omega |f - log(Q/P)/2| = %s (final tol %.2f); "
          "mass at p along eps %s; final masses p, q, r = %s (targets 0.5, 0.5, -0.5, tol %.2f); co-located "
          "D+ = 2p, D- = p with bump (0.15, 0.25) down to eps 0.0125: %s; %.0fs; %s",
          join(deviations, "%.3e").c_str(), kC4Deviation, join(p_track, "%.4f").c_str(),
          join(masses, "%.4f").c_str(), kC4MassError, join(co_track, "%.4f").c_str(), seconds,
          energy.text().c_str()) +
      (failures.empty() ? "" : "; " + failures);
  return r;
}

Report criterion5() {
  Report r;
  EnergyLog energy;
  const SweepReport sweep = adiabatic_sweep(criterion4_family(), schedule(kSchedule));
  energy.add(sweep);
  const auto& last = sweep.rows.back();

  double max_sup = 0.0, max_grad = 0.0, max_ep = 0.0, max_em = 0.0;
  for (const auto& row : sweep.rows) {
    max_sup = std::max(max_sup, row.apriori.sup_f);
    max_grad = std::max(max_grad, row.apriori.sup_grad_f);
    max_ep = std::max(max_ep, row.apriori.l2_exp_f);
    max_em = std::max(max_em, row.apriori.l2_exp_minus_f);
  }
  const ReducedModel limit =
      reduce_limit(criterion4_family()(last.epsilon, last.grid));
  const kw::LimitProfile profile = kw::kw_limit(limit.problem);
  const torus::RegionMask omega =
      omega_region(limit, DiagnosticsConfig{}.omega_radius).rasterize(kUnit, last.grid);
  const kw::AprioriRow zero = kw::apriori_row(0.0, profile.f, omega.intersect(profile.valid));

  const double sup_ratio = max_sup / last.apriori.sup_f;
  const double grad_ratio = max_grad / last.apriori.sup_grad_f;
  const double ep_ratio = max_ep / zero.l2_exp_f;
  const double em_ratio = max_em / zero.l2_exp_minus_f;
  r.require(sup_ratio <= kC5SupFactor, "sup |f| ratio");
  r.require(grad_ratio <= kC5SupFactor, "sup |grad f| ratio");
  r.require(ep_ratio <= kC5L2Factor, "||e^f|| ratio");
  r.require(em_ratio <= kC5L2Factor, "||e^-f|| ratio");
  r.require(energy.violations == 0, "energy monotonicity");
  const std::string failures = r.summary;
  r.summary = fmt("interior bounds on the criterion 4 sweep: max_eps sup|f| / final = %.4f, "
                  "max_eps sup|grad f| / final = %.4f (limit %.1f); max_eps ||e^f||, ||e^-f|| over "
                  "their eps=0 values = %.4f, %.4f (limit %.1f); %s",
                  sup_ratio, grad_ratio, kC5SupFactor, ep_ratio, em_ratio, kC5L2Factor,
                  energy.text().c_str()) +
              (failures.empty() ? "" : "; " + failures);
  return r;
}

Report criterion6() {
  Report r;
  struct Case {
    std::string name;
    Divisor plus, minus;
  };
  const Point a{0.3, 0.3}, b{0.7, 0.4}, c{0.5, 0.8};
  const std::vector<Case> cases = {
      {"D+ = 2a + b, D- = a + c", divisor({{a, 2}, {b, 1}}), divisor({{a, 1}, {c, 1}})},
      {"D+ = 3a, D- = a + 2b", divisor({{a, 3}}), divisor({{a, 1}, {b, 2}})},
      {"D+ = a + b, D- = c", divisor({{a, 1}, {b, 1}}), divisor({{c, 1}})},
  };
  std::string detail;
  for (const auto& cs : cases) {
    const ReducedModel limit = reduce_limit(
        MixedVortexSpec{cs.plus, cs.minus, 0.0, 1.0, 1.0, 0.1, kUnit, GridSpec::square(64), std::nullopt});
    for (const auto& mp : limit.mass_points) {
      int mp_plus = 0, mp_minus = 0;
      for (const auto& q : cs.plus.points()) if (kUnit.distance(q.point, mp.point) < 1e-12) mp_plus = q.multiplicity;
      for (const auto& q : cs.minus.points()) if (kUnit.distance(q.point, mp.point) < 1e-12) mp_minus = q.multiplicity;
      const double order = vanishing_order_fit(
          [&](Point x) { return limit_phi_sq_at(limit, x); }, kUnit, mp.point, 0.002, 0.02);
      const double target = 0.5 * (mp_plus + mp_minus);
      const double floor = 0.5 * std::abs(mp_plus - mp_minus);
      const bool both = mp_plus > 0 && mp_minus > 0;
      r.require(std::abs(order - target) <= kC6OrderRel * target,
                fmt("order %.4f vs %.1f at (%g, %g) in %s", order, target, mp.point.x, mp.point.y,
                    cs.name.c_str()));
      // With one side absent the bound is attained, so it gets the fit tolerance.
      r.require(both ? order > floor : order >= (1.0 - kC6OrderRel) * floor,
                "lower bound |m+ - m-|/2");
      detail += fmt("%s(m+ %d, m- %d) %.4f", detail.empty() ? "" : ", ", mp_plus, mp_minus, order);
    }
  }
  const std::string failures = r.summary;
  r.summary = fmt("vanishing orders of |phi| at eps = 0, target (m+ + m-)/2 within %.0f%%: %s",
                  100 * kC6OrderRel, detail.c_str()) +
              (failures.empty() ? "" : "; " + failures);
  return r;
}

Report criterion7() {
  Report r;
  EnergyLog energy;
  Rng rng(20260701);
  const int weights[] = {2, 1, -1};
  double worst = 0.0;
  int runs = 0;
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<GeneralizedTerm> terms;
    std::vector<Point> used;
    auto fresh = [&] {
      for (;;) {
        const Point p{rng.uniform(0, 1), rng.uniform(0, 1)};
        bool ok = true;
        for (const Point& q : used) ok = ok && kUnit.distance(p, q) > 0.15;
        if (ok) {
          used.push_back(p);
          return p;
        }
      }
    };
    for (int k : weights) {
      std::vector<DivisorPoint> pts;
      for (int n = rng.integer(1, 2); n > 0; --n) pts.push_back({fresh(), rng.integer(1, 2)});
      terms.push_back({divisor(pts), k, rng.uniform(0.5, 2.0)});
    }
    const double tau = rng.uniform(-1.0, 1.0);
    for (double eps : {0.2, 0.1}) {
      const ReducedModel model =
          reduce(GeneralizedSpec{terms, tau, eps, kUnit, GridSpec::square(128)});
      const kw::KWSolution s = kw::kw_solve(model.problem);
      energy.add(s);
      const IdentityResiduals id = integral_identities(model, reconstruct(model, s.f));
      worst = std::max(worst, std::abs(id.identity));
      ++runs;
    }
  }
  r.require(worst <= kC7Identity * kUnit.volume(), "identity");
  r.require(energy.violations == 0, "energy monotonicity");
  const std::string failures = r.summary;
  r.summary = fmt("integral identity, k = (2, 1, -1), %d random divisor sets x eps {0.2, 0.1}: "
                  "max |sum k_j ||phi_j||^2 + tau Vol + 2 pi dbar eps^2| = %.2e (tol %.0e Vol); %s",
                  runs / 2, worst, kC7Identity, energy.text().c_str()) +
              (failures.empty() ? "" : "; " + failures);
  return r;
}

Report criterion8() {
  Report r;
  EnergyLog energy;
  Rng rng(8);
  std::vector<kw::KWProblem> problems;
  for (double eps : {1.0, 0.1, 0.01}) {
    problems.push_back(testing::manufactured_problem(eps, GridSpec::square(128)));
  }
  const auto family = criterion4_family();
  const auto sched = schedule(kSchedule);
  for (double eps : kSchedule) problems.push_back(reduce(family(eps, sched.refine_rule(eps))).problem);
  problems.push_back(
      reduce(family(0.1, GridSpec::square(64))).problem);  // coarser than the core rule asks
  problems.push_back(reduce(GeneralizedSpec{{{divisor({{{0.2, 0.3}, 1}}), 2, 1.0},
                                             {divisor({{{0.6, 0.6}, 1}}), 1, 1.0},
                                             {divisor({{{0.4, 0.8}, 2}}), -1, 1.0}},
                                            0.3, 0.15, kUnit, GridSpec::square(128)})
                         .problem);
  double worst = 0.0;
  int checked = 0;
  for (const auto& problem : problems) {
    if (problem.classification() != kw::Classification::TwoSided) continue;
    ScalarField noise(problem.geometry(), problem.grid());
    for (std::size_t k = 0; k < noise.size(); ++k) noise[k] = rng.uniform(-1.0, 1.0);
    const kw::KWSolution cold = kw::kw_solve(problem);
    const kw::KWSolution warm = kw::kw_solve(problem, {}, noise);
    energy.add(cold);
    energy.add(warm);
    worst = std::max(worst, testing::max_abs_difference(cold.f, warm.f));
    ++checked;
  }
  r.require(checked == static_cast<int>(problems.size()), "a problem was not two-sided");
  r.require(worst <= kC8Distance, "initialisation dependence");
  r.require(energy.violations == 0, "energy monotonicity");
  const std::string failures = r.summary;
  r.summary = fmt("uniqueness on %d two-sided problems (zero vs uniform +-1 start): max sup distance "
                  "%.2e (tol %.0e); %s",
                  checked, worst, kC8Distance, energy.text().c_str()) +
              (failures.empty() ? "" : "; " + failures);
  return r;
}

Report criterion9() {
  Report r;
  Rng rng(9);
  double worst_violation = 0.0;
  int misplaced = 0;
  const int n_xi = 100;
  const double span = 8.0;  // log-width of the xi grid
  const double step = span / n_xi;
  for (int trial = 0; trial < 10000; ++trial) {
    const double a = rng.uniform(0.1, 10), b = rng.uniform(0.1, 10);
    const double x = rng.uniform(0.1, 10), y = rng.uniform(0.1, 10);
    const kw::YoungBound yb = kw::young_bound(a, b, x, y);
    const double rhs = yb.K * std::pow(x, b / (a + b)) * std::pow(y, a / (a + b));
    const double offset = rng.uniform(0.0, 1.0);
    double best = INFINITY;
    double best_log = 0.0;
    for (int i = 0; i < n_xi; ++i) {
      const double log_xi = std::log(yb.xi_star) - span / 2 + (i + offset) * step;
      const double xi = std::exp(log_xi);
      const double lhs = std::pow(xi, -a) * x + std::pow(xi, b) * y;
      worst_violation = std::max(worst_violation, (rhs - lhs) / rhs);
      if (lhs < best) {
        best = lhs;
        best_log = log_xi;
      }
    }
    if (std::abs(best_log - std::log(yb.xi_star)) > step) ++misplaced;
  }
  r.require(worst_violation <= kC9Relative, "inequality violated");
  r.require(misplaced == 0, "grid minimum away from xi0");
  const std::string failures = r.summary;
  r.summary = fmt("scalar inequality over 10^4 (a, b, x, y) x %d xi: worst relative violation "
                  "%.2e (tol %.0e); grid minimum more than one log-step from xi0 in %d cases",
                  n_xi, std::max(0.0, worst_violation), kC9Relative, misplaced) +
              (failures.empty() ? "" : "; " + failures);
  return r;
}

Report criterion10() {
  Report r;
  const torus::BumpCutoff bump(kUnit, {0.5, 0.5}, 0.1, 0.4);
  const GridSpec grid = GridSpec::square(512);
  const double alphas[] = {1.5, 1.75, 1.9};
  std::vector<double> sups;
  for (double a : alphas) sups.push_back(bump.gradient_ratio_sup(grid, a));
  std::vector<double> growth, allowed;
  for (std::size_t i = 0; i + 1 < sups.size(); ++i) {
    growth.push_back(sups[i + 1] / sups[i]);
    allowed.push_back(std::pow((2.0 - alphas[i]) / (2.0 - alphas[i + 1]), 4));
    r.require(growth.back() <= kC10Slack * allowed.back(), fmt("growth at alpha %.2f", alphas[i + 1]));
  }
  const std::string failures = r.summary;
  r.summary = fmt("cutoff ratio sup |grad phi|^2/phi^alpha at alpha {1.5, 1.75, 1.9}, 512^2: %s; "
                  "growth %s vs (2-alpha)^-4 growth %s (slack %.2f)",
                  join(sups, "%.4g").c_str(), join(growth, "%.3f").c_str(),
                  join(allowed, "%.3f").c_str(), kC10Slack) +
              (failures.empty() ? "" : "; " + failures);
  return r;
}

const std::vector<std::function<Report()>> kCriteria = {
    criterion1, criterion2, criterion3, criterion4, criterion5,
    criterion6, criterion7, criterion8, criterion9, criterion10};

}  // namespace

int main(int argc, char** argv) {
  std::optional<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only && (*only < 1 || *only > static_cast<int>(kCriteria.size()))) {
    std::fprintf(stderr, "no criterion %d\n", *only);
    return 2;
  }
  bool all = true;
  for (int n = 1; n <= static_cast<int>(kCriteria.size()); ++n) {
    if (only && *only != n) continue;
    Report r;
    try {
      r = kCriteria[n - 1]();
    } catch (const std::exception& e) {
      r.pass = false;
      r.summary = std::string("threw ") + e.what();
    }
    std::printf("criterion %d: %s %s\n", n, r.pass ? "PASS" : "FAIL", r.summary.c_str());
    for (const auto& s : r.supplementary) std::printf("criterion %d (supplementary): %s\n", n, s.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
