#include "vortexlab/vortex/specs.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "vortexlab/error.hpp"
#include "vortexlab/torus/quadrature.hpp"
#include "vortexlab/torus/spectral.hpp"

namespace vortexlab::vortex {

namespace {

constexpr double kPi = std::numbers::pi;

void require_geometry(const Divisor& divisor, const TorusGeometry& geometry, const char* what) {
  if (!(divisor.geometry() == geometry)) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " lives on a different torus than the spec");
  }
}

void require_epsilon(double epsilon, bool limit) {
  if (limit) return;
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must be positive and finite");
  }
}

SectionTerm make_section(const Divisor& divisor, int weight, double scale,
                         DensityNormalization normalization, const GridSpec& grid) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::NonPositiveInput, "section scale must be positive");
  }
  const auto potential = green::divisor_potential(divisor, grid);
  ScalarField raw = green::vanishing_density(potential, 1.0);
  double c = 1.0;
  switch (normalization) {
    case DensityNormalization::MeanOne: c = 1.0 / raw.mean(); break;
    case DensityNormalization::UnitL2: c = 1.0 / torus::integrate(raw); break;
    case DensityNormalization::Raw: break;
  }
  raw *= c * scale;
  return SectionTerm{divisor, weight, std::log(c * scale), std::move(raw)};
}

// Union of the supports of the sections with the signed multiplicity
// sum_j sign(k_j) m_j at each point.
std::vector<std::pair<Point, int>> signed_support(const std::vector<SectionTerm>& sections,
                                                  const TorusGeometry& geometry) {
  std::vector<std::pair<Point, int>> out;
  for (const auto& s : sections) {
    for (const auto& dp : s.divisor.points()) {
      const int m = s.weight > 0 ? dp.multiplicity : -dp.multiplicity;
      bool merged = false;
      for (auto& [p, total] : out) {
        if (geometry.distance(p, dp.point) < 1e-12) {
          total += m;
          merged = true;
          break;
        }
      }
      if (!merged) out.emplace_back(dp.point, m);
    }
  }
  return out;
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// All-positive weights: integrating gives 2 pi dbar eps^2 < -tau Vol.
void require_bradlow(const kw::KWProblem& problem, double degree, double epsilon, double tau,
                     const TorusGeometry& geometry) {
  if (problem.balance_holds()) return;
  throw Error(ErrorKind::BradlowViolation,
              "Bradlow: 2πdε² ≥ -τ·Vol (d = " + format_number(degree) +
                  ", eps = " + format_number(epsilon) +
                  ", 2 pi d eps^2 = " + format_number(2.0 * kPi * degree * epsilon * epsilon) +
                  ", -tau Vol = " + format_number(-tau * geometry.volume()) + ")");
}

ReducedModel classical_impl(const ClassicalVortexSpec& spec, bool limit) {
  require_epsilon(spec.epsilon, limit);
  require_geometry(spec.divisor, spec.geometry, "divisor");
  if (!spec.divisor.effective()) {
    throw Error(ErrorKind::MixedSignDivisor, "classical vortices need an effective divisor");
  }
  const double eps = limit ? 0.0 : spec.epsilon;
  const double d = spec.divisor.degree();
  const double vol = spec.geometry.volume();
  if (!limit && 2.0 * kPi * d * eps * eps >= vol) {
    throw Error(ErrorKind::BradlowViolation,
                "Bradlow: 2πdε² ≥ Vol (d = " + format_number(d) + ", eps = " + format_number(eps) +
                    ", 2 pi d eps^2 = " + format_number(2.0 * kPi * d * eps * eps) +
                    ", Vol = " + format_number(vol) + ")");
  }
  SectionTerm section =
      make_section(spec.divisor, 1, 1.0, DensityNormalization::MeanOne, spec.grid);
  std::vector<kw::KWTerm> plus{{2.0 * section.density, 1.0}};
  ScalarField w =
      ScalarField::constant(spec.geometry, spec.grid, 4.0 * kPi * eps * eps * d / vol - 2.0);
  kw::KWProblem problem(eps * eps, std::move(plus), {}, std::move(w));

  std::vector<MassPoint> masses;
  for (const auto& dp : spec.divisor.points()) {
    masses.push_back({dp.point, static_cast<double>(dp.multiplicity)});
  }
  std::vector<SectionTerm> sections;
  sections.push_back(std::move(section));
  return ReducedModel{VortexKind::Classical, eps,          -1.0,
                      d,                     spec.geometry, spec.grid,
                      std::move(sections),   std::move(masses), std::move(problem),
                      {}};
}

ReducedModel mixed_impl(const MixedVortexSpec& spec, bool limit) {
  require_epsilon(spec.epsilon, limit);
  require_geometry(spec.divisor_plus, spec.geometry, "divisor_plus");
  require_geometry(spec.divisor_minus, spec.geometry, "divisor_minus");
  if (!std::isfinite(spec.tau)) throw Error(ErrorKind::InvalidArgument, "tau must be finite");
  if (!spec.divisor_plus.effective() || !spec.divisor_minus.effective()) {
    throw Error(ErrorKind::MixedSignDivisor,
                "divisor_plus and divisor_minus must both be effective");
  }
  const double eps = limit ? 0.0 : spec.epsilon;
  const double natural = 0.5 * (spec.divisor_plus.degree() - spec.divisor_minus.degree());
  const double d = spec.degree.value_or(natural);
  if (!std::isfinite(d)) throw Error(ErrorKind::InvalidArgument, "degree must be finite");
  std::vector<std::string> warnings;
  if (std::abs(d - natural) > 1e-12) {
    warnings.push_back("degree " + format_number(d) + " differs from (d+ - d-)/2 = " +
                       format_number(natural));
  }

  std::vector<SectionTerm> sections;
  sections.push_back(
      make_section(spec.divisor_plus, 1, spec.scale_plus, spec.normalization, spec.grid));
  sections.push_back(
      make_section(spec.divisor_minus, -1, spec.scale_minus, spec.normalization, spec.grid));
  const double vol = spec.geometry.volume();
  ScalarField w = ScalarField::constant(spec.geometry, spec.grid,
                                        2.0 * kPi * d * eps * eps / vol + spec.tau);
  kw::KWProblem problem(0.5 * eps * eps, {{sections[0].density, 1.0}},
                        {{sections[1].density, 1.0}}, std::move(w));

  std::vector<MassPoint> masses;
  for (const auto& [p, m] : signed_support(sections, spec.geometry)) {
    std::optional<double> expected;
    if (spec.tau == 0.0) expected = 0.5 * m;
    masses.push_back({p, expected});
  }
  return ReducedModel{VortexKind::Mixed,   eps,           spec.tau,
                      d,                   spec.geometry, spec.grid,
                      std::move(sections), std::move(masses), std::move(problem),
                      std::move(warnings)};
}

ReducedModel generalized_impl(const GeneralizedSpec& spec, bool limit) {
  require_epsilon(spec.epsilon, limit);
  if (!std::isfinite(spec.tau)) throw Error(ErrorKind::InvalidArgument, "tau must be finite");
  if (spec.terms.empty()) {
    throw Error(ErrorKind::InvalidArgument, "the generalized family needs at least one section");
  }
  bool any_positive = false;
  bool any_negative = false;
  for (const auto& t : spec.terms) {
    require_geometry(t.divisor, spec.geometry, "section divisor");
    if (t.weight == 0) throw Error(ErrorKind::InvalidArgument, "weights must be nonzero");
    (t.weight > 0 ? any_positive : any_negative) = true;
  }
  if (!any_negative && spec.tau >= 0.0) {
    throw Error(ErrorKind::Unsolvable,
                "solvability dichotomy: all weights are positive, so tau must be negative");
  }
  if (!any_positive) {
    throw Error(ErrorKind::Unsolvable,
                "solvability dichotomy: weights must have mixed signs, or all be positive with "
                "tau < 0");
  }

  const double eps = limit ? 0.0 : spec.epsilon;
  double weighted_degree = 0.0;
  double weight_sq = 0.0;
  std::vector<SectionTerm> sections;
  std::vector<kw::KWTerm> plus;
  std::vector<kw::KWTerm> minus;
  for (const auto& t : spec.terms) {
    sections.push_back(make_section(t.divisor, t.weight, t.scale, spec.normalization, spec.grid));
    const double k = t.weight;
    weighted_degree += k * t.divisor.degree();
    weight_sq += k * k;
    const double rate = std::abs(k);
    (k > 0 ? plus : minus).push_back({rate * sections.back().density, rate});
  }
  const double dbar = weighted_degree / weight_sq;
  const double vol = spec.geometry.volume();
  ScalarField w = ScalarField::constant(spec.geometry, spec.grid,
                                        2.0 * kPi * dbar * eps * eps / vol + spec.tau);
  kw::KWProblem problem(0.5 * eps * eps, std::move(plus), std::move(minus), std::move(w));
  if (!limit) require_bradlow(problem, dbar, eps, spec.tau, spec.geometry);

  std::vector<MassPoint> masses;
  for (const auto& [p, m] : signed_support(sections, spec.geometry)) masses.push_back({p, {}});
  return ReducedModel{VortexKind::Generalized, eps,           spec.tau,
                      dbar,                    spec.geometry, spec.grid,
                      std::move(sections),     std::move(masses), std::move(problem),
                      {}};
}

ReducedModel reduce_impl(const VortexSpec& spec, bool limit) {
  return std::visit(
      [limit](const auto& s) -> ReducedModel {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ClassicalVortexSpec>) return classical_impl(s, limit);
        if constexpr (std::is_same_v<T, MixedVortexSpec>) return mixed_impl(s, limit);
        if constexpr (std::is_same_v<T, GeneralizedSpec>) return generalized_impl(s, limit);
      },
      spec);
}

// Root of sum_j k_j P_j e^{k_j f} + tau = 0 (increasing in f); NaN without a sign change.
double balance_root(const std::vector<std::pair<int, double>>& terms, double tau) {
  auto g = [&](double f) {
    double s = tau;
    for (const auto& [k, p] : terms) s += k * p * std::exp(k * f);
    return s;
  };
  int kmax = 1;
  for (const auto& [k, p] : terms) kmax = std::max(kmax, std::abs(k));
  const double cap = kw::kExponentGuard / kmax;
  double lo = -1.0;
  double hi = 1.0;
  while (g(lo) > 0.0 && lo > -cap) lo = std::max(2.0 * lo, -cap);
  while (g(hi) < 0.0 && hi < cap) hi = std::min(2.0 * hi, cap);
  if (g(lo) > 0.0 || g(hi) < 0.0) return std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(VortexKind kind) noexcept {
  switch (kind) {
    case VortexKind::Classical: return "classical";
    case VortexKind::Mixed: return "mixed";
    case VortexKind::Generalized: return "generalized";
  }
  return "unknown";
}

std::string_view to_string(DensityNormalization n) noexcept {
  switch (n) {
    case DensityNormalization::MeanOne: return "mean_one";
    case DensityNormalization::UnitL2: return "unit_l2";
    case DensityNormalization::Raw: return "raw";
  }
  return "unknown";
}

double spec_epsilon(const VortexSpec& spec) {
  return std::visit([](const auto& s) { return s.epsilon; }, spec);
}

const TorusGeometry& spec_geometry(const VortexSpec& spec) {
  return std::visit([](const auto& s) -> const TorusGeometry& { return s.geometry; }, spec);
}

const GridSpec& spec_grid(const VortexSpec& spec) {
  return std::visit([](const auto& s) -> const GridSpec& { return s.grid; }, spec);
}

VortexSpec respecify(const VortexSpec& spec, double epsilon, const GridSpec& grid) {
  return std::visit(
      [&](auto s) -> VortexSpec {
        s.epsilon = epsilon;
        s.grid = grid;
        return s;
      },
      spec);
}

double SectionTerm::density_at(Point p) const {
  return std::exp(log_scale + green::divisor_potential_at(divisor, p));
}

ReducedModel reduce_classical(const ClassicalVortexSpec& spec) { return classical_impl(spec, false); }
ReducedModel reduce_mixed(const MixedVortexSpec& spec) { return mixed_impl(spec, false); }
ReducedModel reduce_generalized(const GeneralizedSpec& spec) { return generalized_impl(spec, false); }
ReducedModel reduce(const VortexSpec& spec) { return reduce_impl(spec, false); }
ReducedModel reduce_limit(const VortexSpec& spec) { return reduce_impl(spec, true); }

Reconstruction reconstruct(const ReducedModel& model, const ScalarField& f) {
  f.require_compatible(model.sections.front().density, "reconstruct");
  Reconstruction out{{}, ScalarField(model.geometry, model.grid),
                     ScalarField(model.geometry, model.grid)};
  for (const auto& s : model.sections) {
    ScalarField phi(model.geometry, model.grid);
    const double k = s.weight;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      phi[i] = s.density[i] == 0.0 ? 0.0 : s.density[i] * std::exp(k * f[i]);
    }
    out.phi_sq_total += phi;
    out.phi_sq.push_back(std::move(phi));
  }
  if (model.kind == VortexKind::Classical) {
    if (!(model.epsilon > 0.0)) {
      throw Error(ErrorKind::InvalidArgument,
                  "the classical curvature is not defined at eps = 0");
    }
    const double inv = 1.0 / (model.epsilon * model.epsilon);
    out.curvature = out.phi_sq_total.map([inv](double p) { return (1.0 - p) * inv; });
  } else {
    out.curvature = torus::laplacian(f) * -0.5 +
                    2.0 * kPi * model.degree / model.geometry.volume();
  }
  return out;
}

double classical_curvature_mismatch(const ReducedModel& model, const ScalarField& v) {
  if (model.kind != VortexKind::Classical) {
    throw Error(ErrorKind::InvalidArgument, "curvature cross-check applies to classical models");
  }
  const Reconstruction r = reconstruct(model, v);
  const ScalarField spectral =
      torus::laplacian(v) * -0.5 + 2.0 * kPi * model.degree / model.geometry.volume();
  return torus::sup_norm(r.curvature - spectral);
}

double limit_phi_sq_at(const ReducedModel& model, Point p) {
  if (model.kind == VortexKind::Classical) {
    return model.sections.front().divisor.distance_to_support(p) < 1e-12 ? 0.0 : 1.0;
  }
  std::vector<std::pair<int, double>> terms;
  for (const auto& s : model.sections) terms.emplace_back(s.weight, s.density_at(p));
  if (model.kind == VortexKind::Mixed && model.tau == 0.0) {
    return 2.0 * std::sqrt(terms[0].second * terms[1].second);
  }
  const double f = balance_root(terms, model.tau);
  if (!std::isfinite(f)) return 0.0;
  double total = 0.0;
  for (const auto& [k, density] : terms) total += density * std::exp(k * f);
  return total;
}

}  // namespace vortexlab::vortex
